#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace srqr {

using Index = std::ptrdiff_t;

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

/// Raised when operand shapes or index arguments are inconsistent.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computation cannot proceed on the given values
/// (singular panels, non-finite input, oracle non-convergence).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the readers for malformed files; the message carries the line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, Index line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    Index line() const noexcept { return line_; }

private:
    Index line_;
};

}  // namespace srqr
