#pragma once

#include "qagap/errors.hpp"
#include "qagap/real.hpp"

namespace qagap {

// Working-precision policy for the configurable-precision special functions
// and the continuous solver.
//
//   digits    decimal digits of working precision (>= 16)
//   max_terms cap on series terms before ConvergenceError
//   tail_tol  relative magnitude below which a series tail is accepted;
//             must satisfy 0 < tail_tol < 10^(-digits/2). Stored as a Real
//             because it underflows double for digits > ~300.
struct PrecisionPolicy {
    int digits = 30;
    int max_terms = 200000;
    Real tail_tol;

    explicit PrecisionPolicy(int digits_ = 30, int max_terms_ = 200000)
        : digits(digits_), max_terms(max_terms_), tail_tol(pow10(-digits_, digits_ < 16 ? 16 : digits_)) {
        validate();
    }

    PrecisionPolicy(int digits_, int max_terms_, Real tail_tol_)
        : digits(digits_), max_terms(max_terms_), tail_tol(std::move(tail_tol_)) {
        validate();
    }

    void validate() const {
        if (digits < 16) {
            throw DomainError("PrecisionPolicy: digits must be >= 16");
        }
        if (max_terms < 1) {
            throw DomainError("PrecisionPolicy: max_terms must be positive");
        }
        if (!(tail_tol > 0) || tail_tol >= pow10(-digits / 2.0, digits)) {
            throw DomainError("PrecisionPolicy: tail_tol must lie in (0, 10^(-digits/2))");
        }
    }

    // Same policy shape at a different digit count (tail_tol rescaled).
    PrecisionPolicy with_digits(int d) const { return PrecisionPolicy(d, max_terms); }
};

} // namespace qagap
