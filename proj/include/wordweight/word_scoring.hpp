#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordweight/ngram_model.hpp"

namespace wordweight {

inline constexpr std::string_view kDefaultSubwordMarker = "@@";

struct MergedSentence {
    std::vector<std::string> words;
    /// Number of subword units behind each word; sums to the token count.
    std::vector<std::size_t> fanout;
};

/// Joins each run of marker-suffixed tokens with the token that follows it.
/// An empty marker disables merging.
MergedSentence merge_subwords(std::span<const std::string> tokens,
                              std::string_view marker = kDefaultSubwordMarker);

/// Per-token tracks, all aligned to the sentence's (subword) tokens.
struct ScoreTrack {
    std::vector<double> raw;
    std::vector<double> smoothed;
    std::vector<std::uint8_t> weights;
};

/// Raw domain scores: log P_in(word | history) - log P_out(word | history)
/// computed on merged words, then copied to every subword unit of the word.
/// Empty sentences give empty tracks.
ScoreTrack score_sentence(const NGramModel& lm_in, const NGramModel& lm_out,
                          std::span<const std::string> tokens,
                          std::string_view marker = kDefaultSubwordMarker);

}  // namespace wordweight
