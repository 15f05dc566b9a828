#pragma once

#include <stdexcept>
#include <string>

namespace ori {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Line coefficients with a = b = 0 (no normal direction).
struct DegenerateLine : Error {
    using Error::Error;
};

// A stored coordinate or coefficient would be NaN or infinite.
struct NonFinite : Error {
    using Error::Error;
};

struct ParallelLines : Error {
    using Error::Error;
};

struct NotParallel : Error {
    using Error::Error;
};

struct PointOnLine : Error {
    using Error::Error;
};

// Operation operands violate the operation's preconditions.
struct InvalidInstance : Error {
    using Error::Error;
};

// Polynomial with all coefficients zero: every value is a root.
struct IdenticallyZero : Error {
    using Error::Error;
};

struct EmptyScene : Error {
    using Error::Error;
};

}  // namespace ori
