#ifndef HWROOTS_ERRORS_HPP
#define HWROOTS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwroots {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed expression text. `position` is a 0-based index into the input.
struct SyntaxError : Error {
    SyntaxError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// A function name outside the supported set.
struct UnknownFunctionError : Error {
    explicit UnknownFunctionError(const std::string& name)
        : Error("unknown function '" + name + "'"), name(name) {}
    std::string name;
};

// Point evaluation hit a pole, log(0), or similar.
struct EvalDomainError : Error {
    explicit EvalDomainError(const std::string& msg) : Error(msg) {}
};

// Series division would produce a Laurent series with a genuine pole,
// or a series was requested where none exists. `path` locates the
// offending node in the expression tree, outermost first.
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
    std::string path;
};

// log of a series whose constant term vanishes.
struct LogOfZeroSeriesError : PoleError {
    LogOfZeroSeriesError() : PoleError("log of a series with zero constant term") {}
};

// sqrt (or non-integer power) of a series whose constant term vanishes.
struct SqrtOfZeroSeriesError : PoleError {
    SqrtOfZeroSeriesError() : PoleError("sqrt of a series with zero constant term") {}
};

// The solver's expression is not analytic at the expansion center.
struct SeriesPoleError : Error {
    explicit SeriesPoleError(const std::string& msg)
        : Error(msg + "; try a shifted expansion center") {}
};

// The truncated polynomial had no roots to offer.
struct NoCandidatesError : Error {
    NoCandidatesError() : Error("truncated series polynomial has degree < 1, no candidate roots") {}
};

// Root enumeration called with a non-positive count.
struct InvalidCountError : Error {
    explicit InvalidCountError(int count)
        : Error("root count must be >= 1, got " + std::to_string(count)) {}
};

// P - y*Q collapsed to a constant; there is nothing to invert.
struct DegenerateRationalError : Error {
    DegenerateRationalError() : Error("P - y*Q is constant; no roots to enumerate") {}
};

}  // namespace hwroots

#endif
