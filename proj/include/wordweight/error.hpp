#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordweight {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid option values or missing required settings.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error(line == 0 ? message
                          : "line " + std::to_string(line) + ": " + message)
        , line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class MalformedSubwordError : public Error {
public:
    using Error::Error;
};

/// A per-token file disagrees with its corpus in line or token counts.
class AlignmentError : public Error {
public:
    using Error::Error;
};

class CorpusError : public Error {
public:
    using Error::Error;
};

}  // namespace wordweight
