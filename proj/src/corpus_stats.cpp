#include "wordweight/corpus_stats.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace wordweight {

void CorpusStats::add(std::span<const std::uint8_t> weights, bool drop_all_zero) {
    ++total_sentences;
    total_tokens += weights.size();
    auto selected = static_cast<std::uint64_t>(
        std::count_if(weights.begin(), weights.end(), [](auto w) { return w != 0; }));
    selected_tokens += selected;
    if (!drop_all_zero || selected > 0) ++kept_sentences;
}

void CorpusStats::merge(const CorpusStats& other) {
    total_sentences += other.total_sentences;
    total_tokens += other.total_tokens;
    kept_sentences += other.kept_sentences;
    selected_tokens += other.selected_tokens;
}

CorpusStats collect_stats(std::span<const ScoreTrack> tracks, bool drop_all_zero) {
    CorpusStats stats;
    for (const auto& t : tracks) stats.add(t.weights, drop_all_zero);
    return stats;
}

nlohmann::json to_json(const CorpusStats& s) {
    return {{"total_sentences", s.total_sentences},
            {"total_tokens", s.total_tokens},
            {"kept_sentences", s.kept_sentences},
            {"selected_tokens", s.selected_tokens}};
}

CorpusStats stats_from_json(const nlohmann::json& j) {
    CorpusStats s;
    s.total_sentences = j.at("total_sentences").get<std::uint64_t>();
    s.total_tokens = j.at("total_tokens").get<std::uint64_t>();
    s.kept_sentences = j.at("kept_sentences").get<std::uint64_t>();
    s.selected_tokens = j.at("selected_tokens").get<std::uint64_t>();
    return s;
}

std::string format_stats_table(
    std::span<const std::pair<std::string, CorpusStats>> rows) {
    const std::vector<std::string> header{"mode", "sentences", "kept",
                                          "tokens", "selected"};
    std::vector<std::vector<std::string>> cells{header};
    for (const auto& [label, s] : rows)
        cells.push_back({label, std::to_string(s.total_sentences),
                         std::to_string(s.kept_sentences),
                         std::to_string(s.total_tokens),
                         std::to_string(s.selected_tokens)});
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());

    std::ostringstream out;
    for (const auto& row : cells) {
        out << std::left << std::setw(static_cast<int>(width[0])) << row[0];
        for (std::size_t c = 1; c < row.size(); ++c)
            out << "  " << std::right << std::setw(static_cast<int>(width[c]))
                << row[c];
        out << '\n';
    }
    return out.str();
}

}  // namespace wordweight
