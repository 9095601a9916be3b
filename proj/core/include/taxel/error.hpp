#pragma once

#include <stdexcept>
#include <string>

namespace taxel {

/// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A GridSpec violates its invariants.
class SpecError : public Error {
public:
    using Error::Error;
};

/// Coordinate outside the grid.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Invalid argument to a geometric operation.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Two grids with different specs were compared.
class SpecMismatchError : public Error {
public:
    using Error::Error;
};

/// A shape was requested smaller than it can be drawn.
class TooSmallError : public Error {
public:
    using Error::Error;
};

/// A parametric sampler produced NaN or infinity.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Unknown catalog entry.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. Positions are 1-based.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), message_(message) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

}  // namespace taxel
