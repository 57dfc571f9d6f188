#pragma once

#include "qagap/precision.hpp"
#include "qagap/real.hpp"

namespace qagap {

// Kummer confluent hypergeometric function M(a, b, z) by direct series
// summation at the policy's working precision. The series is truncated once
// the running term stays below tail_tol * |partial sum| for three consecutive
// terms (a single small term can be an alternating-series stall).
//
// Throws DomainError if b is zero or a negative integer, ConvergenceError if
// max_terms is exhausted first.
Real kummer_m(const Real& a, const Real& b, const Real& z, const PrecisionPolicy& prec);

// Parabolic cylinder function D_nu(z) for z >= 0 via the two-Kummer-series
// representation
//
//   D_nu(z) = 2^(nu/2) sqrt(pi) e^(-z^2/4) [ M(-nu/2, 1/2, z^2/2) / Gamma((1-nu)/2)
//                                          - sqrt(2) z M((1-nu)/2, 3/2, z^2/2) / Gamma(-nu/2) ]
//
// with the Gamma reciprocals evaluated as first-class values so that Gamma
// poles give exact zero coefficients.
Real pcf_d(const Real& nu, const Real& z, const PrecisionPolicy& prec);

// dD_nu/dz from the recurrence D'_nu(z) = nu D_(nu-1)(z) - (z/2) D_nu(z).
Real pcf_d_prime(const Real& nu, const Real& z, const PrecisionPolicy& prec);

// Digamma psi_0(x): downward recurrence psi(x) = psi(x+1) - 1/x into the
// asymptotic-series region x > 10*digits, then the Bernoulli asymptotic
// series. Throws DomainError at the poles (x a non-positive integer).
Real digamma(const Real& x, const PrecisionPolicy& prec);

} // namespace qagap
