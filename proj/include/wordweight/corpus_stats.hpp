#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wordweight/word_scoring.hpp"

namespace wordweight {

/// Sentence and token selection counts for one weighting mode.
struct CorpusStats {
    std::uint64_t total_sentences = 0;
    std::uint64_t total_tokens = 0;
    std::uint64_t kept_sentences = 0;
    std::uint64_t selected_tokens = 0;

    /// A sentence is kept when it has a selected token, or always when
    /// `drop_all_zero` is false.
    void add(std::span<const std::uint8_t> weights, bool drop_all_zero = true);
    void merge(const CorpusStats& other);

    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats collect_stats(std::span<const ScoreTrack> tracks,
                          bool drop_all_zero = true);

nlohmann::json to_json(const CorpusStats& stats);
CorpusStats stats_from_json(const nlohmann::json& j);

/// Aligned plain-text table, one row per labelled mode.
std::string format_stats_table(
    std::span<const std::pair<std::string, CorpusStats>> rows);

}  // namespace wordweight
