#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mactt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), message_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

/// A precondition on the arguments of an operation does not hold.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A dimension exceeds the configured truncation bound.
class TruncationError : public Error {
public:
    TruncationError(const std::string& message, int required)
        : Error(message), required_(required) {}

    /// Smallest truncation that would have been sufficient.
    int required() const noexcept { return required_; }

private:
    int required_;
};

}  // namespace mactt
