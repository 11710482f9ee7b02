#pragma once

#include <stdexcept>
#include <string>

namespace hahn {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two operands do not live over the same group shape.
class ShapeMismatchError : public Error {
public:
    explicit ShapeMismatchError(const std::string& what) : Error(what) {}
};

/// Invalid input for the requested operation (bad shape, bad precondition).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// A truncated-series computation cannot deliver the requested precision,
/// or a quantity is indeterminate at the current precision.
class PrecisionError : public Error {
public:
    explicit PrecisionError(const std::string& what) : Error(what) {}
};

/// Text literal could not be parsed; carries 1-based position info.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A budgeted witness search ran out of candidates. Callers must report this
/// as inconclusive, never as a negative answer.
class SearchExhaustedError : public Error {
public:
    explicit SearchExhaustedError(const std::string& what) : Error(what) {}
};

} // namespace hahn
