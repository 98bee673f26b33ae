#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

#include "wordweight/corpus_stats.hpp"
#include "wordweight/error.hpp"
#include "wordweight/weighting.hpp"

#include "brute_force.hpp"

using namespace wordweight;

namespace {

using W = std::vector<std::uint8_t>;
using Vec = std::vector<double>;

Vec random_scores(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d(0.5, 1.0);
    Vec v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST_CASE("binarize uses a >= threshold") {
    CHECK(binarize(Vec{0.4, 0.6, 0.5}, 0.5) == W{0, 1, 1});
    CHECK(binarize(Vec{0, 0, 0}, 0.5) == W{0, 0, 0});
    CHECK(binarize(Vec{-7.0, 0.0, -1e300}, -1e308) == W{1, 1, 1});
    CHECK(binarize(Vec{}, 0.5).empty());
}

TEST_CASE("longest chunk keeps only the longest run") {
    Rng rng(1);
    CHECK(longest_chunk(W{1, 0, 1, 1, 0, 1, 1, 1, 0}, rng) == W{0, 0, 0, 0, 0, 1, 1, 1, 0});
    CHECK(longest_chunk(W{0, 0, 0}, rng) == W{0, 0, 0});
    CHECK(longest_chunk(W{}, rng).empty());
    CHECK(longest_chunk(W{1, 1, 1}, rng) == W{1, 1, 1});

    std::set<W> seen;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        auto r = sentence_rng(seed, 3);
        auto out = longest_chunk(W{1, 1, 0, 1, 1}, r);
        CHECK((out == W{1, 1, 0, 0, 0} || out == W{0, 0, 0, 1, 1}));
        seen.insert(out);
    }
    CHECK(seen.size() == 2);
}

TEST_CASE("longest chunk matches brute force on random vectors") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 2000; ++trial) {
        W w(gen() % 40);
        for (auto& x : w) x = gen() % 3 != 0;
        auto r = sentence_rng(5, static_cast<std::uint64_t>(trial));
        CHECK(oracle::longest_chunk_outputs(w).count(longest_chunk(w, r)) == 1);
    }
}

TEST_CASE("ties are broken uniformly") {
    W w{1, 0, 1, 0, 1, 0, 1};
    std::vector<int> hits(4, 0);
    const int draws = 8000;
    for (int i = 0; i < draws; ++i) {
        auto r = sentence_rng(17, static_cast<std::uint64_t>(i));
        auto out = longest_chunk(w, r);
        for (int k = 0; k < 4; ++k)
            if (out[static_cast<std::size_t>(2 * k)] == 1) ++hits[static_cast<std::size_t>(k)];
    }
    for (int h : hits) CHECK(std::abs(h - draws / 4) < 200);
}

TEST_CASE("sentence weight broadcasts the mean decision") {
    CHECK(sentence_weight(Vec{0.2, 0.8, 0.8}, 0.5) == W{1, 1, 1});
    CHECK(sentence_weight(Vec{0.2, 0.2}, 0.5) == W{0, 0});
    CHECK(sentence_weight(Vec{0.5}, 0.5) == W{1});
    CHECK_THROWS_AS(sentence_weight(Vec{}, 0.5), Error);

    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 300; ++trial) {
        auto s = random_scores(gen, 1 + gen() % 20);
        double mean = 0.0;
        for (double x : s) mean += x;
        mean /= static_cast<double>(s.size());
        CHECK(sentence_weight(s, 0.5) == binarize(Vec(s.size(), mean), 0.5));
    }
}

TEST_CASE("random mask") {
    Rng a(42), b(42), c(43);
    CHECK(random_mask(50, 1.0, a) == W(50, 1));
    CHECK(random_mask(50, 0.0, a) == W(50, 0));
    CHECK(random_mask(0, 0.5, a).empty());

    auto m = random_mask(10000, 0.4, b);
    double ones = 0;
    for (auto x : m) ones += x;
    CHECK(ones / 10000 >= 0.37);
    CHECK(ones / 10000 <= 0.43);

    Rng x(42), y(42);
    auto first = random_mask(300, 0.5, x);
    CHECK(first == random_mask(300, 0.5, y));
    CHECK(first != random_mask(300, 0.5, c));
}

TEST_CASE("same seed and index give the same weights in every mode") {
    std::mt19937_64 gen(8);
    for (auto mode : {WeightMode::word, WeightMode::chunk, WeightMode::sentence, WeightMode::random}) {
        WeightingConfig cfg;
        cfg.mode = mode;
        cfg.seed = 99;
        for (std::uint64_t i = 0; i < 50; ++i) {
            auto s = random_scores(gen, gen() % 15);
            CHECK(assign_weights(s, cfg, i) == assign_weights(s, cfg, i));
            CHECK(assign_weights(s, cfg, i).size() == s.size());
        }
    }
}

TEST_CASE("assign_weights dispatches on mode") {
    Vec s{0.9, 0.9, -3.0, 0.7, 0.7, 0.7, 0.1};
    WeightingConfig cfg;
    cfg.mode = WeightMode::word;
    CHECK(assign_weights(s, cfg, 0) == W{1, 1, 0, 1, 1, 1, 0});
    cfg.mode = WeightMode::chunk;
    CHECK(assign_weights(s, cfg, 0) == W{0, 0, 0, 1, 1, 1, 0});
    cfg.mode = WeightMode::sentence;
    CHECK(assign_weights(s, cfg, 0) == W(7, 0));
    cfg.mode = WeightMode::random;
    cfg.random_keep_fraction = 1.0;
    CHECK(assign_weights(s, cfg, 0) == W(7, 1));
    CHECK(assign_weights(Vec{}, cfg, 0).empty());
    cfg.mode = WeightMode::sentence;
    CHECK(assign_weights(Vec{}, cfg, 0).empty());
    CHECK(in_domain_weights(4) == W{1, 1, 1, 1});
}

TEST_CASE("raising the threshold never selects more") {
    std::mt19937_64 gen(4);
    std::vector<Vec> corpus;
    for (int i = 0; i < 200; ++i) corpus.push_back(random_scores(gen, 1 + gen() % 25));
    std::uint64_t prev_tokens = UINT64_MAX, prev_sentences = UINT64_MAX;
    for (double t = -2.0; t <= 3.0; t += 0.25) {
        std::uint64_t tokens = 0, sentences = 0;
        for (const auto& s : corpus) {
            for (auto x : binarize(s, t)) tokens += x;
            sentences += sentence_weight(s, t)[0];
        }
        CHECK(tokens <= prev_tokens);
        CHECK(sentences <= prev_sentences);
        prev_tokens = tokens;
        prev_sentences = sentences;
    }
}

TEST_CASE("weighting config validation") {
    WeightingConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.random_keep_fraction = 1.5;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.random_keep_fraction = 0.5;
    cfg.threshold = std::nan("");
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    CHECK(parse_weight_mode("chunk") == WeightMode::chunk);
    CHECK_THROWS_AS(parse_weight_mode("phrase"), ConfigError);
}

TEST_CASE("corpus statistics") {
    CorpusStats s;
    s.add(W{1, 1});
    s.add(W{0, 0});
    CHECK(s.total_sentences == 2);
    CHECK(s.total_tokens == 4);
    CHECK(s.kept_sentences == 1);
    CHECK(s.selected_tokens == 2);

    CorpusStats keep_all;
    keep_all.add(W{1, 1}, false);
    keep_all.add(W{0, 0}, false);
    CHECK(keep_all.kept_sentences == 2);

    CorpusStats merged;
    merged.merge(s);
    merged.merge(keep_all);
    CHECK(merged.total_sentences == 4);
    CHECK(merged.selected_tokens == 4);

    CHECK(stats_from_json(to_json(s)) == s);
    auto j = to_json(s);
    CHECK(j["kept_sentences"] == 1);
    CHECK(j["selected_tokens"] == 2);

    std::vector<ScoreTrack> tracks(2);
    tracks[0].weights = {1, 1};
    tracks[1].weights = {0, 0};
    CHECK(collect_stats(tracks) == s);

    std::vector<std::pair<std::string, CorpusStats>> rows{{"word", s}, {"chunk", keep_all}};
    auto table = format_stats_table(rows);
    CHECK(table.find("mode") != std::string::npos);
    CHECK(table.find("selected") != std::string::npos);
    CHECK(table.find("chunk") != std::string::npos);
}

TEST_CASE("chunk selection never exceeds word selection") {
    std::mt19937_64 gen(12);
    for (double t : {-0.5, 0.0, 0.5, 1.0}) {
        CorpusStats word, chunk;
        for (std::uint64_t i = 0; i < 300; ++i) {
            auto s = random_scores(gen, gen() % 30);
            auto w = binarize(s, t);
            auto r = sentence_rng(1, i);
            word.add(w);
            chunk.add(longest_chunk(w, r));
        }
        CHECK(chunk.selected_tokens <= word.selected_tokens);
        CHECK(word.selected_tokens <= word.total_tokens);
        CHECK(chunk.kept_sentences == word.kept_sentences);
    }
}
