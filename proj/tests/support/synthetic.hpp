#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace synth {

namespace fs = std::filesystem;

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = fs::temp_directory_path() /
                ("wordweight-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

inline void write_corpus(const fs::path& path,
                         const std::vector<std::vector<std::string>>& corpus) {
    std::ofstream out(path, std::ios::binary);
    for (const auto& s : corpus) out << join(s) << '\n';
}

// A first-order Markov source over its own content words plus function
// words shared with every other domain. Each content word prefers a few
// successors, which keeps the number of distinct n-grams bounded.
class Domain {
public:
    Domain(std::string prefix, int content_words, int function_words, int successors,
           std::uint64_t seed, double function_rate = 0.15, double jump_rate = 0.1)
        : prefix_(std::move(prefix)), content_(content_words), function_(function_words),
          function_rate_(function_rate), jump_rate_(jump_rate), rng_(seed) {
        next_.resize(static_cast<std::size_t>(content_words));
        for (auto& succ : next_)
            for (int i = 0; i < successors; ++i) succ.push_back(pick(content_words));
    }

    std::string content_word(int i) const { return prefix_ + std::to_string(i); }
    static std::string function_word(int i) { return "f" + std::to_string(i); }

    int random_content() { return pick(content_); }

    // Token sequence continuing from content word `state` (-1: fresh start).
    std::vector<std::string> emit(int length, int state = -1) {
        std::vector<std::string> out;
        int cur = state;
        for (int i = 0; i < length; ++i) {
            double u = unit();
            if (cur >= 0 && u < function_rate_) {
                out.push_back(function_word(pick(function_)));
                cur = -1;
                continue;
            }
            if (cur >= 0 && u < 1.0 - jump_rate_) {
                const auto& succ = next_[static_cast<std::size_t>(cur)];
                cur = succ[static_cast<std::size_t>(pick(static_cast<int>(succ.size())))];
            } else {
                cur = pick(content_);
            }
            out.push_back(content_word(cur));
        }
        return out;
    }

    std::vector<std::vector<std::string>> corpus(int sentences, int min_len, int max_len) {
        std::vector<std::vector<std::string>> out;
        out.reserve(static_cast<std::size_t>(sentences));
        for (int i = 0; i < sentences; ++i) out.push_back(emit(between(min_len, max_len)));
        return out;
    }

    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
    int between(int lo, int hi) { return lo + pick(hi - lo + 1); }
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

private:
    std::string prefix_;
    int content_;
    int function_;
    double function_rate_;
    double jump_rate_;
    std::vector<std::vector<int>> next_;
    std::mt19937_64 rng_;
};

struct PlantedCorpus {
    std::vector<std::vector<std::string>> sentences;
    std::vector<std::vector<std::uint8_t>> labels;
};

struct PlantOptions {
    int sentences = 10000;
    double planted_fraction = 0.3;
    int span_min = 6;
    int span_max = 14;
    int sentence_min = 12;
    int sentence_max = 30;
    // Chance that a background token is replaced by a stray in-domain
    // content word. Strays are labelled out-of-domain.
    double stray_rate = 0.02;
    std::uint64_t seed = 7;
};

// Out-of-domain text from `background` with contiguous `planted` spans in a
// fraction of the sentences. Labels mark exactly the planted spans.
inline PlantedCorpus plant(Domain& planted, Domain& background, const PlantOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto between = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };

    PlantedCorpus out;
    for (int i = 0; i < opt.sentences; ++i) {
        int length = between(opt.sentence_min, opt.sentence_max);
        auto words = background.emit(length);
        std::vector<std::uint8_t> labels(words.size(), 0);
        for (auto& w : words)
            if (unit() < opt.stray_rate) w = planted.content_word(planted.random_content());
        if (unit() < opt.planted_fraction) {
            int span = between(opt.span_min, std::min(opt.span_max, length));
            int start = between(0, length - span);
            auto inserted = planted.emit(span);
            for (int k = 0; k < span; ++k) {
                words[static_cast<std::size_t>(start + k)] = inserted[static_cast<std::size_t>(k)];
                labels[static_cast<std::size_t>(start + k)] = 1;
            }
        }
        out.sentences.push_back(std::move(words));
        out.labels.push_back(std::move(labels));
    }
    return out;
}

}  // namespace synth
