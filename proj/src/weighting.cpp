#include "wordweight/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wordweight/error.hpp"

namespace wordweight {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(seeded_engine(seed, stream)) {}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % n + 1) % n;
    std::uint64_t x = engine_();
    while (x > limit) x = engine_();
    return x % n;
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

WeightMode parse_weight_mode(std::string_view name) {
    if (name == "word") return WeightMode::word;
    if (name == "chunk") return WeightMode::chunk;
    if (name == "sentence") return WeightMode::sentence;
    if (name == "random") return WeightMode::random;
    throw ConfigError("unknown mode '" + std::string(name) +
                      "' (expected word, chunk, sentence or random)");
}

std::string_view to_string(WeightMode mode) {
    switch (mode) {
        case WeightMode::word: return "word";
        case WeightMode::chunk: return "chunk";
        case WeightMode::sentence: return "sentence";
        case WeightMode::random: return "random";
    }
    return "?";
}

void validate(const WeightingConfig& config) {
    if (!std::isfinite(config.threshold))
        throw ConfigError("threshold must be finite");
    if (!(config.random_keep_fraction >= 0.0 && config.random_keep_fraction <= 1.0))
        throw ConfigError("random_keep_fraction must lie in [0, 1]");
}

Weights binarize(std::span<const double> smoothed, double threshold) {
    Weights w(smoothed.size());
    for (std::size_t t = 0; t < smoothed.size(); ++t)
        w[t] = smoothed[t] >= threshold ? 1 : 0;
    return w;
}

Weights longest_chunk(std::span<const std::uint8_t> weights, Rng& rng) {
    Weights out(weights.size(), 0);
    std::size_t best = 0;
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < weights.size();) {
        if (!weights[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < weights.size() && weights[j]) ++j;
        std::size_t len = j - i;
        if (len > best) {
            best = len;
            starts.assign(1, i);
        } else if (len == best) {
            starts.push_back(i);
        }
        i = j;
    }
    if (best == 0) return out;
    std::size_t pick = starts.size() == 1 ? 0 : rng.uniform_index(starts.size());
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(starts[pick]), best, 1);
    return out;
}

Weights sentence_weight(std::span<const double> smoothed, double threshold) {
    if (smoothed.empty()) throw Error("sentence weight of an empty sentence");
    double mean = std::accumulate(smoothed.begin(), smoothed.end(), 0.0) /
                  static_cast<double>(smoothed.size());
    return Weights(smoothed.size(), mean >= threshold ? 1 : 0);
}

Weights random_mask(std::size_t length, double keep_fraction, Rng& rng) {
    Weights w(length);
    for (auto& v : w) v = rng.uniform01() < keep_fraction ? 1 : 0;
    return w;
}

Weights assign_weights(std::span<const double> smoothed,
                       const WeightingConfig& config, std::uint64_t index) {
    if (smoothed.empty()) return {};
    switch (config.mode) {
        case WeightMode::word: return binarize(smoothed, config.threshold);
        case WeightMode::chunk: {
            auto rng = sentence_rng(config.seed, index);
            return longest_chunk(binarize(smoothed, config.threshold), rng);
        }
        case WeightMode::sentence: return sentence_weight(smoothed, config.threshold);
        case WeightMode::random: {
            auto rng = sentence_rng(config.seed, index);
            return random_mask(smoothed.size(), config.random_keep_fraction, rng);
        }
    }
    return {};
}

}  // namespace wordweight
