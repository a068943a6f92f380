#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wrapfs {

/// Invalid configuration or CLI option. Maps to exit code 1.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input record. `line()` is 1-based; 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// File could not be opened, read or written. Maps to exit code 2 together with ParseError.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wrapfs
