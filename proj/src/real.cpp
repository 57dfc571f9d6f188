#include "qagap/real.hpp"

#include <cmath>

namespace qagap {

Real const_pi(int digits) {
    Real r(0, static_cast<unsigned>(digits));
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real const_ln2(int digits) {
    Real r(0, static_cast<unsigned>(digits));
    mpfr_const_log2(r.backend().data(), MPFR_RNDN);
    return r;
}

Real const_euler(int digits) {
    Real r(0, static_cast<unsigned>(digits));
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

Real zeta_even(unsigned two_k, int digits) {
    Real r(0, static_cast<unsigned>(digits));
    mpfr_zeta_ui(r.backend().data(), two_k, MPFR_RNDN);
    return r;
}

bool is_nonpositive_integer(const Real& x) {
    return x <= 0 && floor(x) == x;
}

Real reciprocal_gamma(const Real& x) {
    if (is_nonpositive_integer(x)) {
        return Real(0, x.precision());
    }
    return 1 / boost::multiprecision::tgamma(x);
}

Real pow10(double e, int digits) {
    return pow(make_real(10, digits), make_real(e, digits));
}

} // namespace qagap
