#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vdw {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected argument: k < 2, N < 1, periodic block larger than N, ...
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

// Text that does not conform to its format (certificate body, DIMACS).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset = 0)
        : Error(msg), offset_(offset) {}

    // 1-based character position of the offending input, 0 when unknown.
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// A color index that falls outside the declared or representable range.
// `position` is the 1-based sequence position (or character offset when
// raised while parsing text).
class ColorOutOfRangeError : public Error {
public:
    ColorOutOfRangeError(const std::string& msg, int position, int color)
        : Error(msg), position_(position), color_(color) {}

    int position() const { return position_; }
    int color() const { return color_; }

private:
    int position_;
    int color_;
};

// Solver output that does not follow the s/v line convention.
class MalformedOutputError : public Error {
public:
    using Error::Error;
};

// A model with zero or several true colors at some position.
class InconsistentModelError : public Error {
public:
    InconsistentModelError(const std::string& msg, int position)
        : Error(msg), position_(position) {}

    int position() const { return position_; }

private:
    int position_;
};

// CNF input with a zero literal, an empty clause, or a variable index
// beyond the declared count.
class InvalidFormulaError : public Error {
public:
    using Error::Error;
};

// Exhaustive enumeration refused because the search space is too large.
class GuardError : public Error {
public:
    using Error::Error;
};

}  // namespace vdw
