#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace qagap {

// Variable-precision real number (MPFR backend). Precision is per-value:
// binary operations inherit the *minimum* operand precision, so numeric
// kernels must construct every operand at the intended working precision.
// Use make_real / the const_* helpers and never default-construct inside a
// kernel.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline Real make_real(double v, int digits) {
    return Real(v, static_cast<unsigned>(digits));
}

inline Real make_real(long v, int digits) {
    return Real(v, static_cast<unsigned>(digits));
}

inline Real make_real(int v, int digits) {
    return Real(v, static_cast<unsigned>(digits));
}

// Copy re-seated at the given decimal precision (exact when raising).
inline Real reseat(const Real& v, int digits) {
    Real r = v;
    r.precision(static_cast<unsigned>(digits));
    return r;
}

inline double to_double(const Real& x) {
    return x.convert_to<double>();
}

Real const_pi(int digits);
Real const_ln2(int digits);
Real const_euler(int digits);

// Riemann zeta at an even positive integer argument, zeta(2k).
Real zeta_even(unsigned two_k, int digits);

bool is_nonpositive_integer(const Real& x);

// 1/Gamma(x) with Gamma poles mapped to exact zeros.
Real reciprocal_gamma(const Real& x);

// 10^e at the given working precision.
Real pow10(double e, int digits);

// Scoped default precision for stray default-constructed temporaries.
// Kernels do not rely on it (all values are built at explicit precision),
// but boost-internal scratch values pick it up.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int digits)
        : saved_(Real::default_precision()) {
        Real::default_precision(static_cast<unsigned>(digits));
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

} // namespace qagap
