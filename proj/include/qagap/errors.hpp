#pragma once

#include <stdexcept>
#include <string>

namespace qagap {

// Base class for all recoverable errors thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (poles, out-of-range
// indices, invalid configuration values).
class DomainError : public Error {
public:
    using Error::Error;
};

// A series or iteration hit its term/iteration cap before meeting its
// tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Model parameters outside the regime an operation supports (energy above the
// barrier top, alpha at or beyond the matching analysis' validity range).
class RegimeError : public Error {
public:
    using Error::Error;
};

// A bracketing scan found no sign change.
class NoRootError : public Error {
public:
    using Error::Error;
};

// Adaptive precision would exceed the configured digit cap.
class PrecisionCeilingError : public Error {
public:
    using Error::Error;
};

// A tridiagonal matrix decomposed into independent blocks (zero off-diagonal).
// The eigensolver handles this internally; the type exists for callers that
// probe matrices directly.
class DegenerateError : public Error {
public:
    using Error::Error;
};

// alpha exactly on a scaling-region boundary, where no formula applies.
class BoundaryError : public Error {
public:
    using Error::Error;
};

// The second-order correction exceeds the leading term, so the truncated
// expansion would be negative.
class NegativeGapError : public Error {
public:
    using Error::Error;
};

// A series was not sampled uniformly in ln n.
class NonUniformGridError : public Error {
public:
    using Error::Error;
};

// One or more fit bins contain fewer than two points.
class EmptyBinError : public Error {
public:
    using Error::Error;
};

// The requested threshold is not bracketed by the supplied n range.
class BracketError : public Error {
public:
    using Error::Error;
};

// The gap ratio is not monotone over the bracketing range.
class NonMonotoneError : public Error {
public:
    using Error::Error;
};

// Malformed input file (CLI data files).
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace qagap
