#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wordweight/ngram_model.hpp"
#include "wordweight/vocabulary.hpp"

namespace wordweight {

struct KneserNeyOptions {
    int order = 4;
    std::uint64_t min_count = 1;
    double discount = 0.75;
};

void validate(const KneserNeyOptions& options);

/// Streaming interpolated Kneser-Ney estimator with a single discount shared
/// by every order.
///
/// Sentences are padded with order-1 begin markers and one end marker. Only
/// full-order counts are kept while streaming; lower orders are derived in
/// build(). Lower-order n-grams use continuation counts (number of distinct
/// left neighbours), except those starting with the begin marker, whose only
/// left neighbour is padding and which therefore keep raw counts. The
/// unigram level interpolates with a uniform distribution over every
/// predictable word (all ids except the begin marker), which is where the
/// unknown marker gets its probability mass.
///
/// The result is stored in backoff form: seen n-grams carry their
/// interpolated probability and each context carries its interpolation
/// weight as backoff, so backoff queries reproduce the interpolated model
/// exactly.
class KneserNeyTrainer {
public:
    explicit KneserNeyTrainer(KneserNeyOptions options);

    void add_sentence(std::span<const std::string> words);

    std::uint64_t sentences() const noexcept { return sentences_; }
    std::uint64_t tokens() const noexcept { return tokens_; }

    NGramModel build() const;

private:
    KneserNeyOptions options_;
    Vocabulary provisional_;
    std::vector<std::uint64_t> frequency_;
    std::unordered_map<NGramKey, std::uint64_t, NGramKeyHash> top_counts_;
    std::vector<WordId> scratch_;
    std::uint64_t sentences_ = 0;
    std::uint64_t tokens_ = 0;
};

NGramModel train_lm(std::span<const std::vector<std::string>> corpus,
                    const KneserNeyOptions& options);

}  // namespace wordweight
