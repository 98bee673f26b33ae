#include "wordweight/corpus_io.hpp"

#include <algorithm>
#include <thread>

#include "wordweight/error.hpp"
#include "wordweight/text_format.hpp"
#include "wordweight/word_scoring.hpp"

namespace wordweight {

LineReader::LineReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw Error("cannot open " + path.string());
}

bool LineReader::next(std::string& line) {
    if (!std::getline(in_, line)) {
        if (in_.bad()) throw Error("read error in " + path_.string());
        return false;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_;
    return true;
}

std::size_t LineReader::next_block(std::vector<std::string>& lines,
                                   std::size_t max) {
    std::size_t got = 0;
    std::string line;
    while (got < max && next(line)) {
        lines.push_back(std::move(line));
        ++got;
    }
    return got;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

std::vector<std::vector<std::string>> read_corpus(const std::filesystem::path& path) {
    LineReader reader(path);
    std::vector<std::vector<std::string>> corpus;
    std::string line;
    while (reader.next(line)) corpus.push_back(split_tokens(line));
    return corpus;
}

NGramModel train_lm_file(const std::filesystem::path& corpus,
                         const KneserNeyOptions& options,
                         std::string_view marker) {
    KneserNeyTrainer trainer(options);
    LineReader reader(corpus);
    std::string line;
    while (reader.next(line)) {
        auto tokens = split_tokens(line);
        try {
            trainer.add_sentence(merge_subwords(tokens, marker).words);
        } catch (const MalformedSubwordError& e) {
            throw MalformedSubwordError(corpus.string() + ":" +
                                        std::to_string(reader.line_number()) +
                                        ": " + e.what());
        }
    }
    try {
        return trainer.build();
    } catch (const CorpusError& e) {
        throw CorpusError(corpus.string() + ": " + e.what());
    }
}

std::vector<Weights> read_weights_file(const std::filesystem::path& path) {
    LineReader reader(path);
    std::vector<Weights> out;
    std::string line;
    try {
        while (reader.next(line))
            out.push_back(parse_weights(line, reader.line_number()));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
    return out;
}

void verify_alignment(const std::filesystem::path& corpus,
                      const std::filesystem::path& per_token) {
    LineReader a(corpus);
    LineReader b(per_token);
    std::string la;
    std::string lb;
    while (true) {
        bool ha = a.next(la);
        bool hb = b.next(lb);
        if (!ha && !hb) return;
        if (ha != hb)
            throw AlignmentError(per_token.string() + " has " +
                                 (ha ? "fewer" : "more") + " lines than " +
                                 corpus.string() + " (diverges at line " +
                                 std::to_string(std::max(a.line_number(), b.line_number())) +
                                 ")");
        auto na = split_fields(la).size();
        auto nb = split_fields(lb).size();
        if (na != nb)
            throw AlignmentError(per_token.string() + ":" +
                                 std::to_string(b.line_number()) + ": " +
                                 std::to_string(nb) + " values for " +
                                 std::to_string(na) + " tokens");
    }
}

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    std::size_t w = std::min<std::size_t>(resolve_workers(workers), n);
    if (w == 1) {
        body(0, n);
        return;
    }
    std::vector<std::exception_ptr> errors(w);
    {
        std::vector<std::jthread> threads;
        threads.reserve(w);
        for (std::size_t i = 0; i < w; ++i) {
            std::size_t begin = n * i / w;
            std::size_t end = n * (i + 1) / w;
            threads.emplace_back([&, i, begin, end] {
                try {
                    body(begin, end);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace wordweight
