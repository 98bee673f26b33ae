#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wordweight/vocabulary.hpp"

namespace wordweight {

inline constexpr int kMaxOrder = 8;

/// Log probability stored for n-grams that exist only as contexts, e.g. the
/// sentence-begin padding. Equals log10 = -99 in ARPA files.
inline constexpr double kContextOnlyLogProb = -99.0 * std::numbers::ln10;

/// Fixed-capacity id sequence used as a hash key; avoids a heap allocation
/// per lookup.
struct NGramKey {
    std::array<WordId, kMaxOrder> ids{};
    std::uint8_t size = 0;

    NGramKey() = default;
    explicit NGramKey(std::span<const WordId> seq);

    std::span<const WordId> view() const { return {ids.data(), size}; }

    /// Drops the first id.
    NGramKey suffix() const { return NGramKey(view().subspan(1)); }
    /// Drops the last id.
    NGramKey context() const { return NGramKey(view().first(size - 1u)); }

    friend bool operator==(const NGramKey& a, const NGramKey& b) {
        if (a.size != b.size) return false;
        for (std::size_t i = 0; i < a.size; ++i)
            if (a.ids[i] != b.ids[i]) return false;
        return true;
    }
    friend bool operator<(const NGramKey& a, const NGramKey& b);
};

struct NGramKeyHash {
    std::size_t operator()(const NGramKey& key) const noexcept;
};

/// Natural-log probability and optional natural-log backoff weight.
struct NGramEntry {
    double log_prob = 0.0;
    std::optional<double> backoff;
};

struct ModelInfo {
    std::uint64_t training_tokens = 0;
    double discount = 0.0;
};

/// Backoff n-gram language model. Scores are natural logs throughout.
/// Immutable once built; const member functions may be called concurrently.
class NGramModel {
public:
    using Level = std::unordered_map<NGramKey, NGramEntry, NGramKeyHash>;

    NGramModel(int order, Vocabulary vocab, ModelInfo info = {});

    int order() const noexcept { return order_; }
    const Vocabulary& vocab() const noexcept { return vocab_; }
    const ModelInfo& info() const noexcept { return info_; }

    void set(std::span<const WordId> ngram, NGramEntry entry);
    NGramEntry* find(std::span<const WordId> ngram);
    const NGramEntry* find(std::span<const WordId> ngram) const;

    /// Entries of length n (1-based).
    const Level& level(int n) const { return levels_.at(n - 1); }
    Level& level(int n) { return levels_.at(n - 1); }

    /// Keys of length n in ascending id order.
    std::vector<NGramKey> sorted_keys(int n) const;

    /// log P(word | history), using at most order-1 trailing ids of history.
    double log_prob(std::span<const WordId> history, WordId word) const;

    /// Per-word log P(w_t | w_{t-n+1} .. w_{t-1}) with the sentence padded by
    /// order-1 begin markers. The end marker is not scored.
    std::vector<double> score_words(std::span<const std::string> words) const;

    /// Full sentence log probability including the end-marker event.
    double sentence_log_prob(std::span<const std::string> words) const;

    /// exp of the average negative log probability over all words and end
    /// markers of the corpus.
    double perplexity(std::span<const std::vector<std::string>> corpus) const;

private:
    std::vector<WordId> padded_ids(std::span<const std::string> words,
                                   bool with_end) const;

    int order_;
    Vocabulary vocab_;
    ModelInfo info_;
    std::vector<Level> levels_;
};

}  // namespace wordweight
