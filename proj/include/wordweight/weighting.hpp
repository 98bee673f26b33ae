#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace wordweight {

using Weights = std::vector<std::uint8_t>;

/// mt19937_64 with distribution code written out here, so draws are
/// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform in [0, n); n > 0.
    std::uint64_t uniform_index(std::uint64_t n);
    /// Uniform in [0, 1).
    double uniform01();

private:
    std::mt19937_64 engine_;
};

/// Generator for sentence `index` under `seed`; independent of processing
/// order and worker count.
inline Rng sentence_rng(std::uint64_t seed, std::uint64_t index) {
    return Rng(seed, index);
}

enum class WeightMode { word, chunk, sentence, random };

WeightMode parse_weight_mode(std::string_view name);
std::string_view to_string(WeightMode mode);

struct WeightingConfig {
    double threshold = 0.5;
    WeightMode mode = WeightMode::word;
    bool drop_all_zero_sentences = true;
    double random_keep_fraction = 0.5;
    std::uint64_t seed = 0;
};

void validate(const WeightingConfig& config);

/// w_t = 1 iff smoothed_t >= threshold.
Weights binarize(std::span<const double> smoothed, double threshold);

/// Keeps only the longest run of ones, zeroing everything else. Ties between
/// equally long runs are broken uniformly with `rng`.
Weights longest_chunk(std::span<const std::uint8_t> weights, Rng& rng);

/// All ones iff the mean smoothed score reaches the threshold. Throws on an
/// empty vector.
Weights sentence_weight(std::span<const double> smoothed, double threshold);

/// Each position independently 1 with probability keep_fraction.
Weights random_mask(std::size_t length, double keep_fraction, Rng& rng);

/// In-domain sentences skip scoring and train on every token.
inline Weights in_domain_weights(std::size_t length) {
    return Weights(length, 1);
}

/// Weights for sentence `index` under `config`. Empty input gives empty
/// weights in every mode.
Weights assign_weights(std::span<const double> smoothed,
                       const WeightingConfig& config, std::uint64_t index);

}  // namespace wordweight
