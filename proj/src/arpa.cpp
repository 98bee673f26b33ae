#include "wordweight/arpa.hpp"

#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "wordweight/error.hpp"
#include "wordweight/text_format.hpp"

namespace wordweight {

namespace {

constexpr double kLn10 = std::numbers::ln10;

std::string to_log10_text(double natural) {
    if (natural == kContextOnlyLogProb) return "-99";
    return format_roundtrip(natural / kLn10);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

class LineSource {
public:
    explicit LineSource(std::istream& in) : in_(in) {}

    bool next(std::string_view& out) {
        if (!std::getline(in_, buf_)) return false;
        ++line_;
        out = trim(buf_);
        return true;
    }
    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    std::string buf_;
    std::size_t line_ = 0;
};

std::string section_name(int n) { return "\\" + std::to_string(n) + "-grams:"; }

}  // namespace

void write_arpa(const NGramModel& model, std::ostream& out) {
    const auto& vocab = model.vocab();
    out << "\\data\\\n";
    for (int n = 1; n <= model.order(); ++n)
        out << "ngram " << n << '=' << model.level(n).size() << '\n';
    for (int n = 1; n <= model.order(); ++n) {
        out << '\n' << section_name(n) << '\n';
        for (const auto& key : model.sorted_keys(n)) {
            const auto& entry = model.level(n).at(key);
            out << to_log10_text(entry.log_prob) << '\t';
            for (std::size_t i = 0; i < key.size; ++i) {
                if (i) out << ' ';
                out << vocab.word(key.ids[i]);
            }
            if (entry.backoff) out << '\t' << to_log10_text(*entry.backoff);
            out << '\n';
        }
    }
    out << "\n\\end\\\n";
}

NGramModel read_arpa(std::istream& in) {
    LineSource src(in);
    std::string_view line;

    bool have_data = false;
    while (src.next(line)) {
        if (line == "\\data\\") {
            have_data = true;
            break;
        }
    }
    if (!have_data) throw ParseError("missing \\data\\ header", src.line());

    std::vector<std::uint64_t> declared;
    bool more = false;
    while ((more = src.next(line))) {
        if (line.empty()) {
            if (declared.empty()) continue;
            break;
        }
        if (line.front() == '\\') break;
        if (line.rfind("ngram ", 0) != 0)
            throw ParseError("expected 'ngram N=count', got '" + std::string(line) + "'",
                             src.line());
        auto decl = trim(line.substr(6));
        auto eq = decl.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'ngram N=count'", src.line());
        auto n = parse_count(trim(decl.substr(0, eq)), src.line());
        auto count = parse_count(trim(decl.substr(eq + 1)), src.line());
        if (n != declared.size() + 1)
            throw ParseError("ngram orders must be listed as 1, 2, ...", src.line());
        declared.push_back(count);
    }
    if (declared.empty()) throw ParseError("no ngram counts in \\data\\", src.line());
    if (declared.size() > static_cast<std::size_t>(kMaxOrder))
        throw ParseError("order exceeds maximum " + std::to_string(kMaxOrder),
                         src.line());
    const int order = static_cast<int>(declared.size());

    // Reads up to the header of section `n`; `line` may already hold it.
    auto seek_header = [&](int n, bool have_line) {
        if (have_line && !line.empty()) {
            if (line != section_name(n))
                throw ParseError("expected " + section_name(n) + ", got '" +
                                     std::string(line) + "'",
                                 src.line());
            return;
        }
        while (src.next(line)) {
            if (line.empty()) continue;
            if (line != section_name(n))
                throw ParseError("expected " + section_name(n) + ", got '" +
                                     std::string(line) + "'",
                                 src.line());
            return;
        }
        throw ParseError("missing section " + section_name(n), src.line());
    };

    struct Parsed {
        double log_prob;
        std::vector<std::string_view> words;
        std::optional<double> backoff;
    };
    auto parse_entry = [&](int n) {
        auto fields = split_fields(line);
        auto k = static_cast<std::size_t>(n);
        if (fields.size() != k + 1 && fields.size() != k + 2)
            throw ParseError("section " + section_name(n) + ": expected " +
                                 std::to_string(k) + " words per entry",
                             src.line());
        Parsed p;
        p.log_prob = parse_real(fields[0], src.line()) * kLn10;
        p.words.assign(fields.begin() + 1, fields.begin() + 1 + n);
        if (fields.size() == k + 2) {
            p.backoff = parse_real(fields[k + 1], src.line()) * kLn10;
        }
        return p;
    };
    // Consumes entries of section n; leaves `line` at the following header.
    auto read_section = [&](int n, auto&& on_entry) {
        std::uint64_t seen = 0;
        bool ended = false;
        while (src.next(line)) {
            if (line.empty()) continue;
            if (line.front() == '\\') {
                ended = true;
                break;
            }
            on_entry(parse_entry(n));
            ++seen;
        }
        if (!ended) throw ParseError("missing \\end\\ marker", src.line());
        if (seen != declared[n - 1])
            throw ParseError("section " + section_name(n) + " declares " +
                                 std::to_string(declared[n - 1]) +
                                 " entries but lists " + std::to_string(seen),
                             src.line());
    };

    seek_header(1, more);
    Vocabulary vocab;
    std::vector<std::pair<WordId, NGramEntry>> unigrams;
    read_section(1, [&](const Parsed& p) {
        unigrams.emplace_back(vocab.intern(p.words[0]),
                              NGramEntry{p.log_prob, p.backoff});
    });
    std::vector<bool> listed(vocab.size(), false);
    for (const auto& u : unigrams) listed[u.first] = true;
    for (WordId reserved : {Vocabulary::kUnk, Vocabulary::kBos, Vocabulary::kEos})
        if (!listed[reserved])
            throw ParseError("missing reserved unigram " + vocab.word(reserved),
                             src.line());

    NGramModel model(order, std::move(vocab));
    for (const auto& [id, entry] : unigrams)
        model.set(std::span<const WordId>(&id, 1), entry);

    for (int n = 2; n <= order; ++n) {
        seek_header(n, true);
        std::vector<WordId> ids(static_cast<std::size_t>(n));
        read_section(n, [&](const Parsed& p) {
            for (int i = 0; i < n; ++i) {
                auto id = model.vocab().find(p.words[i]);
                if (!id)
                    throw ParseError("word '" + std::string(p.words[i]) +
                                         "' missing from \\1-grams:",
                                     src.line());
                ids[i] = *id;
            }
            model.set(ids, NGramEntry{p.log_prob, p.backoff});
        });
    }
    if (line != "\\end\\")
        throw ParseError("expected \\end\\, got '" + std::string(line) + "'",
                         src.line());
    return model;
}

void write_arpa_file(const NGramModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_arpa(model, out);
    if (!out.flush()) throw Error("failed writing " + path.string());
}

NGramModel read_arpa_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return read_arpa(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
}

}  // namespace wordweight
