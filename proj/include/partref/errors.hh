#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace partref {

// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: functor terms, coalgebra files, initial partitions.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(format(what, line, column)), line_(line), column_(column) {}
    explicit ParseError(const std::string& what) : Error(what) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

// Invalid combination of options or arguments.
class UsageError : public Error {
public:
    using Error::Error;
};

// Exact arithmetic left the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

// An internal consistency check failed (invariant checks, contract violations).
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace partref
