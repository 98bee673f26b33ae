#include "wordweight/ngram_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wordweight/error.hpp"

namespace wordweight {

NGramKey::NGramKey(std::span<const WordId> seq) {
    if (seq.size() > static_cast<std::size_t>(kMaxOrder))
        throw ConfigError("n-gram longer than the maximum order " +
                          std::to_string(kMaxOrder));
    std::copy(seq.begin(), seq.end(), ids.begin());
    size = static_cast<std::uint8_t>(seq.size());
}

bool operator<(const NGramKey& a, const NGramKey& b) {
    auto va = a.view();
    auto vb = b.view();
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(),
                                        vb.end());
}

std::size_t NGramKeyHash::operator()(const NGramKey& key) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ key.size;
    for (std::size_t i = 0; i < key.size; ++i) {
        h ^= key.ids[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
    }
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
}

NGramModel::NGramModel(int order, Vocabulary vocab, ModelInfo info)
    : order_(order), vocab_(std::move(vocab)), info_(info) {
    if (order < 1 || order > kMaxOrder)
        throw ConfigError("order must be in [1, " + std::to_string(kMaxOrder) +
                          "], got " + std::to_string(order));
    levels_.resize(static_cast<std::size_t>(order));
}

void NGramModel::set(std::span<const WordId> ngram, NGramEntry entry) {
    if (ngram.empty() || ngram.size() > static_cast<std::size_t>(order_))
        throw ConfigError("n-gram length outside model order");
    levels_[ngram.size() - 1][NGramKey(ngram)] = entry;
}

NGramEntry* NGramModel::find(std::span<const WordId> ngram) {
    if (ngram.empty() || ngram.size() > static_cast<std::size_t>(order_))
        return nullptr;
    auto& lvl = levels_[ngram.size() - 1];
    auto it = lvl.find(NGramKey(ngram));
    return it == lvl.end() ? nullptr : &it->second;
}

const NGramEntry* NGramModel::find(std::span<const WordId> ngram) const {
    return const_cast<NGramModel*>(this)->find(ngram);
}

std::vector<NGramKey> NGramModel::sorted_keys(int n) const {
    std::vector<NGramKey> keys;
    const auto& lvl = level(n);
    keys.reserve(lvl.size());
    for (const auto& kv : lvl) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    return keys;
}

double NGramModel::log_prob(std::span<const WordId> history,
                            WordId word) const {
    auto max_ctx = static_cast<std::size_t>(order_ - 1);
    if (history.size() > max_ctx) history = history.last(max_ctx);

    double backoff = 0.0;
    std::array<WordId, kMaxOrder> gram{};
    for (std::size_t len = history.size();; --len) {
        auto ctx = history.last(len);
        std::copy(ctx.begin(), ctx.end(), gram.begin());
        gram[len] = word;
        if (const auto* e = find(std::span<const WordId>(gram.data(), len + 1)))
            return backoff + e->log_prob;
        if (len == 0) break;
        if (const auto* c = find(ctx); c && c->backoff) backoff += *c->backoff;
    }
    // Word without a unigram entry; only possible for hand-built models.
    if (word != Vocabulary::kUnk) return backoff + log_prob({}, Vocabulary::kUnk);
    return -std::numeric_limits<double>::infinity();
}

std::vector<WordId> NGramModel::padded_ids(std::span<const std::string> words,
                                           bool with_end) const {
    std::vector<WordId> ids(static_cast<std::size_t>(order_ - 1),
                            Vocabulary::kBos);
    ids.reserve(ids.size() + words.size() + 1);
    for (const auto& w : words) {
        WordId id = vocab_.lookup(w);
        // Text tokens spelled like the padding markers score as unknown.
        if (id == Vocabulary::kBos || id == Vocabulary::kEos) id = Vocabulary::kUnk;
        ids.push_back(id);
    }
    if (with_end) ids.push_back(Vocabulary::kEos);
    return ids;
}

std::vector<double> NGramModel::score_words(
    std::span<const std::string> words) const {
    auto ids = padded_ids(words, false);
    auto pad = static_cast<std::size_t>(order_ - 1);
    std::vector<double> out;
    out.reserve(words.size());
    std::span<const WordId> all(ids);
    for (std::size_t t = 0; t < words.size(); ++t)
        out.push_back(log_prob(all.subspan(t, pad), all[pad + t]));
    return out;
}

double NGramModel::sentence_log_prob(std::span<const std::string> words) const {
    auto ids = padded_ids(words, true);
    auto pad = static_cast<std::size_t>(order_ - 1);
    std::span<const WordId> all(ids);
    double total = 0.0;
    for (std::size_t t = 0; t + pad < ids.size(); ++t)
        total += log_prob(all.subspan(t, pad), all[pad + t]);
    return total;
}

double NGramModel::perplexity(
    std::span<const std::vector<std::string>> corpus) const {
    double total = 0.0;
    std::size_t events = 0;
    for (const auto& sentence : corpus) {
        total += sentence_log_prob(sentence);
        events += sentence.size() + 1;
    }
    if (events == 0) return 1.0;
    return std::exp(-total / static_cast<double>(events));
}

}  // namespace wordweight
