#include "wordweight/kneser_ney.hpp"

#include <cmath>

#include "wordweight/error.hpp"

namespace wordweight {

namespace {

struct Counts {
    std::uint64_t raw = 0;
    std::uint64_t continuation = 0;
};

using CountLevel = std::unordered_map<NGramKey, Counts, NGramKeyHash>;

// Text tokens spelled like the padding markers are treated as unknown words.
WordId text_word_id(WordId id) {
    return id == Vocabulary::kBos || id == Vocabulary::kEos ? Vocabulary::kUnk
                                                            : id;
}

}  // namespace

void validate(const KneserNeyOptions& options) {
    if (options.order < 1 || options.order > kMaxOrder)
        throw ConfigError("order must be in [1, " + std::to_string(kMaxOrder) +
                          "], got " + std::to_string(options.order));
    if (!(options.discount > 0.0 && options.discount < 1.0))
        throw ConfigError("discount must lie in (0, 1), got " +
                          std::to_string(options.discount));
}

KneserNeyTrainer::KneserNeyTrainer(KneserNeyOptions options)
    : options_(options) {
    validate(options_);
    frequency_.resize(provisional_.size(), 0);
}

void KneserNeyTrainer::add_sentence(std::span<const std::string> words) {
    auto pad = static_cast<std::size_t>(options_.order - 1);
    scratch_.assign(pad, Vocabulary::kBos);
    for (const auto& w : words) {
        WordId id = text_word_id(provisional_.intern(w));
        if (id >= frequency_.size()) frequency_.resize(id + 1, 0);
        ++frequency_[id];
        scratch_.push_back(id);
    }
    scratch_.push_back(Vocabulary::kEos);

    std::span<const WordId> ids(scratch_);
    auto n = static_cast<std::size_t>(options_.order);
    for (std::size_t end = pad; end < ids.size(); ++end)
        ++top_counts_[NGramKey(ids.subspan(end - pad, n))];

    ++sentences_;
    tokens_ += words.size();
}

NGramModel KneserNeyTrainer::build() const {
    if (tokens_ == 0) throw CorpusError("empty training corpus");

    const int n = options_.order;
    const double d = options_.discount;

    Vocabulary vocab;
    std::vector<WordId> remap(provisional_.size(), Vocabulary::kUnk);
    remap[Vocabulary::kBos] = Vocabulary::kBos;
    remap[Vocabulary::kEos] = Vocabulary::kEos;
    for (WordId id = 3; id < provisional_.size(); ++id)
        if (frequency_[id] >= options_.min_count)
            remap[id] = vocab.intern(provisional_.word(id));

    std::vector<CountLevel> counts(static_cast<std::size_t>(n));
    for (const auto& [key, c] : top_counts_) {
        NGramKey mapped = key;
        for (std::size_t i = 0; i < mapped.size; ++i)
            mapped.ids[i] = remap[mapped.ids[i]];
        counts[n - 1][mapped].raw += c;
    }
    // Lower orders from the level above: raw count and distinct left neighbours.
    for (int len = n - 1; len >= 1; --len) {
        auto& lower = counts[len - 1];
        for (const auto& [key, c] : counts[len]) {
            auto& e = lower[key.suffix()];
            e.raw += c.raw;
            e.continuation += 1;
        }
    }

    auto adjusted = [n](const NGramKey& key, const Counts& c) {
        bool raw = key.size == n || key.ids[0] == Vocabulary::kBos;
        return static_cast<double>(raw ? c.raw : c.continuation);
    };

    NGramModel model(n, vocab, ModelInfo{tokens_, d});

    // Unigrams: interpolate with uniform over all predictable ids.
    {
        double total = 0.0;
        double types = 0.0;
        for (const auto& [key, c] : counts[0]) {
            total += adjusted(key, c);
            types += 1.0;
        }
        double uniform = 1.0 / static_cast<double>(vocab.size() - 1);
        double spread = d * types / total * uniform;
        for (WordId id = 0; id < vocab.size(); ++id) {
            if (id == Vocabulary::kBos) {
                model.set(std::span<const WordId>(&id, 1),
                          {kContextOnlyLogProb, std::nullopt});
                continue;
            }
            double p = spread;
            auto it = counts[0].find(NGramKey(std::span<const WordId>(&id, 1)));
            if (it != counts[0].end()) p += (adjusted(it->first, it->second) - d) / total;
            model.set(std::span<const WordId>(&id, 1), {std::log(p), std::nullopt});
        }
    }

    for (int len = 2; len <= n; ++len) {
        struct ContextStats {
            double total = 0.0;
            double types = 0.0;
        };
        std::unordered_map<NGramKey, ContextStats, NGramKeyHash> contexts;
        for (const auto& [key, c] : counts[len - 1]) {
            auto& s = contexts[key.context()];
            s.total += adjusted(key, c);
            s.types += 1.0;
        }
        for (const auto& [ctx, s] : contexts) {
            double gamma = d * s.types / s.total;
            auto* entry = model.find(ctx.view());
            if (entry == nullptr) {
                // All-padding contexts are never predicted themselves.
                model.set(ctx.view(), {kContextOnlyLogProb, std::nullopt});
                entry = model.find(ctx.view());
            }
            entry->backoff = std::log(gamma);
        }
        for (const auto& [key, c] : counts[len - 1]) {
            NGramKey ctx = key.context();
            const auto& s = contexts.at(ctx);
            double gamma = d * s.types / s.total;
            auto view = key.view();
            double lower = std::exp(
                model.log_prob(view.subspan(1, view.size() - 2), view.back()));
            double p = (adjusted(key, c) - d) / s.total + gamma * lower;
            model.set(view, {std::log(p), std::nullopt});
        }
    }
    return model;
}

NGramModel train_lm(std::span<const std::vector<std::string>> corpus,
                    const KneserNeyOptions& options) {
    KneserNeyTrainer trainer(options);
    for (const auto& sentence : corpus) trainer.add_sentence(sentence);
    return trainer.build();
}

}  // namespace wordweight
