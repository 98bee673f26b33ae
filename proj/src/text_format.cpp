#include "wordweight/text_format.hpp"

#include <charconv>
#include <cmath>

#include "wordweight/error.hpp"

namespace wordweight {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> split_tokens(std::string_view line) {
    auto fields = split_fields(line);
    return {fields.begin(), fields.end()};
}

std::string format_fixed6(double value) {
    if (!std::isfinite(value))
        throw Error("cannot format non-finite score " + std::to_string(value));
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value,
                             std::chars_format::fixed, 6);
    std::string out(buf, res.ptr);
    if (out == "-0.000000") out.erase(0, 1);
    return out;
}

double quantize6(double value) {
    auto text = format_fixed6(value);
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

std::string format_roundtrip(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, res.ptr};
}

double parse_real(std::string_view field, std::size_t line) {
    double out = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    if (!field.empty() && *first == '+') ++first;
    auto res = std::from_chars(first, last, out);
    if (field.empty() || res.ec != std::errc{} || res.ptr != last)
        throw ParseError("expected a number, got '" + std::string(field) + "'",
                         line);
    return out;
}

std::uint64_t parse_count(std::string_view field, std::size_t line) {
    std::uint64_t out = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), out);
    if (field.empty() || res.ec != std::errc{} ||
        res.ptr != field.data() + field.size())
        throw ParseError("expected a count, got '" + std::string(field) + "'",
                         line);
    return out;
}

std::string join_fixed6(std::span<const double> values) {
    std::string out;
    out.reserve(values.size() * 10);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out.push_back(' ');
        out += format_fixed6(values[i]);
    }
    return out;
}

std::string join_weights(std::span<const std::uint8_t> weights) {
    std::string out;
    out.reserve(weights.size() * 2);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) out.push_back(' ');
        out.push_back(weights[i] ? '1' : '0');
    }
    return out;
}

std::vector<double> parse_reals(std::string_view line, std::size_t line_no) {
    std::vector<double> out;
    for (auto f : split_fields(line)) out.push_back(parse_real(f, line_no));
    return out;
}

std::vector<std::uint8_t> parse_weights(std::string_view line,
                                        std::size_t line_no) {
    std::vector<std::uint8_t> out;
    for (auto f : split_fields(line)) {
        if (f == "0")
            out.push_back(0);
        else if (f == "1")
            out.push_back(1);
        else
            throw ParseError("weight must be 0 or 1, got '" + std::string(f) + "'",
                             line_no);
    }
    return out;
}

}  // namespace wordweight
