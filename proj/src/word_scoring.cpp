#include "wordweight/word_scoring.hpp"

#include "wordweight/error.hpp"

namespace wordweight {

MergedSentence merge_subwords(std::span<const std::string> tokens,
                              std::string_view marker) {
    MergedSentence out;
    if (marker.empty()) {
        out.words.assign(tokens.begin(), tokens.end());
        out.fanout.assign(tokens.size(), 1);
        return out;
    }
    std::string pending;
    std::size_t pieces = 0;
    for (const auto& tok : tokens) {
        std::string_view t = tok;
        ++pieces;
        if (t.size() >= marker.size() && t.ends_with(marker)) {
            t.remove_suffix(marker.size());
            pending.append(t);
            continue;
        }
        pending.append(t);
        out.words.push_back(std::move(pending));
        out.fanout.push_back(pieces);
        pending.clear();
        pieces = 0;
    }
    if (pieces != 0)
        throw MalformedSubwordError("sentence ends with continuation token '" +
                                    tokens.back() + "'");
    return out;
}

ScoreTrack score_sentence(const NGramModel& lm_in, const NGramModel& lm_out,
                          std::span<const std::string> tokens,
                          std::string_view marker) {
    ScoreTrack track;
    if (tokens.empty()) return track;
    auto merged = merge_subwords(tokens, marker);
    auto in = lm_in.score_words(merged.words);
    auto out = lm_out.score_words(merged.words);
    track.raw.reserve(tokens.size());
    for (std::size_t w = 0; w < merged.words.size(); ++w) {
        double s = in[w] - out[w];
        track.raw.insert(track.raw.end(), merged.fanout[w], s);
    }
    return track;
}

}  // namespace wordweight
