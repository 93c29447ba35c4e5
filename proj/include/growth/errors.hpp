#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace growth {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed function-spec text. Carries the byte offset of the first
/// offending character.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t offset_)
        : Error(what + " (byte " + std::to_string(offset_) + ")"), offset(offset_) {}
    std::size_t offset;
};

/// Structurally valid input with out-of-range parameters (p <= 0, theta
/// outside [0,1], alpha <= -1 where forbidden, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Evaluation requested outside a view's representable window.
struct EvalError : Error {
    using Error::Error;
};

/// A bisection or bracket expansion failed to converge. The message
/// includes the final bracket and residual.
struct ConvergenceError : Error {
    using Error::Error;
};

} // namespace growth
