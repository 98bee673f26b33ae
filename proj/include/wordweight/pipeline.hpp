#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wordweight/corpus_stats.hpp"
#include "wordweight/kneser_ney.hpp"
#include "wordweight/smoothing.hpp"
#include "wordweight/weighting.hpp"

namespace wordweight {

struct PipelineConfig {
    // Each language model comes from an ARPA file or is trained from a corpus.
    std::filesystem::path in_domain_corpus;
    std::filesystem::path out_domain_corpus;
    std::filesystem::path in_domain_lm;
    std::filesystem::path out_domain_lm;

    /// Target side of the out-of-domain parallel corpus.
    std::filesystem::path target;
    /// Optional in-domain target side; receives all-ones weights.
    std::filesystem::path in_domain_target;
    std::filesystem::path output_dir;

    KneserNeyOptions lm;
    KernelShape kernel = KernelShape::gaussian;
    int kernel_size = 5;
    SigmaPolicy sigma_policy = SigmaPolicy::variance;
    double sigma = 1.0;
    WeightingConfig weighting;
    std::string subword_marker{"@@"};
    unsigned threads = 1;
    bool write_lms = false;
    std::size_t block_size = 4096;
};

/// Overlays the keys of a JSON object onto `config`. Unknown keys and
/// ill-typed values raise ConfigError naming the key.
void apply_config_json(PipelineConfig& config, const nlohmann::json& j);
PipelineConfig load_config_file(const std::filesystem::path& path);
nlohmann::json to_json(const PipelineConfig& config);

/// Checks required keys and that referenced inputs exist.
void validate(const PipelineConfig& config);

struct PipelineResult {
    std::filesystem::path raw_scores_file;
    std::filesystem::path scores_file;
    std::filesystem::path weights_file;
    std::filesystem::path stats_file;
    std::optional<std::filesystem::path> in_domain_weights_file;
    /// Per-mode statistics, labelled by mode name.
    std::vector<std::pair<std::string, CorpusStats>> stats;
    KernelShape kernel_used = KernelShape::none;
    std::optional<double> sigma;
};

/// Score, smooth, weight and report on the out-of-domain target corpus.
///
/// Writes into output_dir: raw_scores.txt, scores.txt (smoothed),
/// weights.txt, stats.json, stats.txt and, when configured,
/// in_domain.weights.txt and the two ARPA models. Score values pass through
/// their 6-decimal file form between stages, so running the stage commands
/// one by one reproduces these files byte for byte.
PipelineResult run_pipeline(const PipelineConfig& config,
                            std::ostream* log = nullptr);

// Individual stages over line-aligned files.

/// Writes raw scores for every sentence of `corpus`; returns the moments of
/// the written (6-decimal) values.
ScoreMoments write_raw_scores(const NGramModel& lm_in, const NGramModel& lm_out,
                              const std::filesystem::path& corpus,
                              const std::filesystem::path& output,
                              std::string_view marker, unsigned threads,
                              std::size_t block_size = 4096);

ScoreMoments score_file_moments(const std::filesystem::path& scores);

void write_smoothed_scores(const std::filesystem::path& raw,
                           const std::filesystem::path& output,
                           const Kernel& kernel, unsigned threads,
                           std::size_t block_size = 4096);

/// Word-level thresholding, or sentence-level when `sentence_level`.
void write_binarized(const std::filesystem::path& smoothed,
                     const std::filesystem::path& output, double threshold,
                     bool sentence_level);

void write_longest_chunks(const std::filesystem::path& weights,
                          const std::filesystem::path& output,
                          std::uint64_t seed);

CorpusStats weights_file_stats(const std::filesystem::path& weights,
                               bool drop_all_zero = true);

/// Word, chunk and sentence statistics for a smoothed score file.
std::vector<std::pair<std::string, CorpusStats>> smoothed_file_stats(
    const std::filesystem::path& smoothed, const WeightingConfig& config);

}  // namespace wordweight
