#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordweight {

/// Splits on spaces and tabs, dropping empty fields.
std::vector<std::string_view> split_fields(std::string_view line);
std::vector<std::string> split_tokens(std::string_view line);

/// Fixed 6-decimal rendering used by every score file: '.' separator, no
/// exponent, and no negative zero.
std::string format_fixed6(double value);

/// The value a score takes after a round trip through a score file.
double quantize6(double value);

/// Shortest representation that parses back to the identical double.
std::string format_roundtrip(double value);

/// Strict full-field parse. Throws ParseError carrying `line` on failure.
double parse_real(std::string_view field, std::size_t line = 0);
std::uint64_t parse_count(std::string_view field, std::size_t line = 0);

std::string join_fixed6(std::span<const double> values);
std::string join_weights(std::span<const std::uint8_t> weights);

std::vector<double> parse_reals(std::string_view line, std::size_t line_no);
std::vector<std::uint8_t> parse_weights(std::string_view line,
                                        std::size_t line_no);

}  // namespace wordweight
