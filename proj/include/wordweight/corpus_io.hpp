#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wordweight/kneser_ney.hpp"
#include "wordweight/weighting.hpp"

namespace wordweight {

/// Line-by-line reader that strips a trailing '\r'.
class LineReader {
public:
    explicit LineReader(const std::filesystem::path& path);

    bool next(std::string& line);
    /// Appends up to `max` lines; returns how many were read.
    std::size_t next_block(std::vector<std::string>& lines, std::size_t max);

    /// 1-based number of the last line returned.
    std::size_t line_number() const noexcept { return line_; }
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::ifstream in_;
    std::size_t line_ = 0;
};

std::ofstream open_output(const std::filesystem::path& path);

std::vector<std::vector<std::string>> read_corpus(const std::filesystem::path& path);

/// Trains on a monolingual corpus file, merging subword units first.
NGramModel train_lm_file(const std::filesystem::path& corpus,
                         const KneserNeyOptions& options,
                         std::string_view marker);

/// One line per sentence, space-separated 0/1 values.
std::vector<Weights> read_weights_file(const std::filesystem::path& path);

/// Throws AlignmentError unless `per_token` has exactly one line per corpus
/// line and one value per corpus token on every line.
void verify_alignment(const std::filesystem::path& corpus,
                      const std::filesystem::path& per_token);

/// Runs body(begin, end) over contiguous slices of [0, n) on up to `workers`
/// threads. The partition depends only on n and workers.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t, std::size_t)>& body);

unsigned resolve_workers(unsigned requested);

}  // namespace wordweight
