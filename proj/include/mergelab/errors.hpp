#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mergelab {

struct UnknownPolicyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct AlphaOutOfRangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Input file rejected; `line` is 1-based.
struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}

    std::size_t line;
};

/// An enabled engine invariant check failed. `step` counts stack
/// mutations (pushes + merges) performed before the violation.
struct InstrumentationViolation : std::runtime_error {
    InstrumentationViolation(const std::string& message, std::uint64_t step)
        : std::runtime_error("step " + std::to_string(step) + ": " + message), step(step) {}

    std::uint64_t step;
};

}  // namespace mergelab
