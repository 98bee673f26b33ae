#pragma once

#include <filesystem>
#include <iosfwd>

#include "wordweight/ngram_model.hpp"

namespace wordweight {

/// ARPA text. Files hold base-10 logs; models hold natural logs. Values are
/// written in shortest round-trip form so read(write(m)) is lossless up to
/// the base conversion.
void write_arpa(const NGramModel& model, std::ostream& out);
NGramModel read_arpa(std::istream& in);

void write_arpa_file(const NGramModel& model, const std::filesystem::path& path);
NGramModel read_arpa_file(const std::filesystem::path& path);

}  // namespace wordweight
