#include "qagap/specfun.hpp"

#include <cmath>

namespace qagap {

namespace {

// Internal guard digits: pcf_d subtracts two series of comparable size near
// Gamma poles, digamma accumulates ~10*digits recurrence steps.
constexpr int kGuardDigits = 10;

} // namespace

Real kummer_m(const Real& a, const Real& b, const Real& z, const PrecisionPolicy& prec) {
    if (is_nonpositive_integer(b)) {
        throw DomainError("kummer_m: b must not be zero or a negative integer");
    }
    const int wd = prec.digits;
    PrecisionGuard guard(wd);

    const Real aw = reseat(a, wd);
    const Real bw = reseat(b, wd);
    const Real zw = reseat(z, wd);

    Real term = make_real(1, wd);
    Real sum = make_real(1, wd);
    int consecutive_small = 0;
    for (int k = 0; k < prec.max_terms; ++k) {
        term *= (aw + k) * zw / ((bw + k) * (k + 1));
        sum += term;
        const Real scale = (sum == 0) ? make_real(1, wd) : abs(sum);
        if (abs(term) <= prec.tail_tol * scale) {
            if (++consecutive_small >= 3) {
                return sum;
            }
        } else {
            consecutive_small = 0;
        }
    }
    throw ConvergenceError("kummer_m: series did not meet tail tolerance within max_terms");
}

Real pcf_d(const Real& nu, const Real& z, const PrecisionPolicy& prec) {
    if (z < 0) {
        throw DomainError("pcf_d: z must be non-negative");
    }
    const int wd = prec.digits + kGuardDigits;
    const PrecisionPolicy inner = prec.with_digits(wd);
    PrecisionGuard guard(wd);

    const Real nw = reseat(nu, wd);
    const Real zw = reseat(z, wd);
    const Real half = make_real(1, wd) / 2;
    const Real u = zw * zw / 2;

    const Real even_part = reciprocal_gamma((1 - nw) / 2) * kummer_m(-nw / 2, half, u, inner);
    const Real odd_part = reciprocal_gamma(-nw / 2) * kummer_m((1 - nw) / 2, 3 * half, u, inner);

    const Real prefactor = pow(make_real(2, wd), nw / 2) * sqrt(const_pi(wd)) * exp(-u / 2);
    return prefactor * (even_part - sqrt(make_real(2, wd)) * zw * odd_part);
}

Real pcf_d_prime(const Real& nu, const Real& z, const PrecisionPolicy& prec) {
    const int wd = prec.digits + kGuardDigits;
    PrecisionGuard guard(wd);
    const Real nw = reseat(nu, wd);
    const Real zw = reseat(z, wd);
    return nw * pcf_d(nw - 1, zw, prec) - zw / 2 * pcf_d(nw, zw, prec);
}

Real digamma(const Real& x, const PrecisionPolicy& prec) {
    if (is_nonpositive_integer(x)) {
        throw DomainError("digamma: pole at zero / negative integers");
    }
    const int wd = prec.digits + kGuardDigits;
    PrecisionGuard guard(wd);

    const Real threshold = make_real(10 * prec.digits, wd);
    Real y = reseat(x, wd);
    Real shift = make_real(0, wd);
    while (y < threshold) {
        shift -= 1 / y;
        y += 1;
    }

    // psi(y) = ln y - 1/(2y) - sum_k B_2k / (2k y^(2k)) for large y.
    Real result = log(y) - 1 / (2 * y);
    const Real y2 = y * y;
    const Real two_pi_sq = 4 * const_pi(wd) * const_pi(wd); // (2*pi)^2
    const Real tol = pow10(-(prec.digits + 5), wd);

    // r_k = (2k)! / (2*pi)^(2k), built incrementally; B_2k = (-1)^(k+1) 2 r_k zeta(2k).
    Real r = 2 / two_pi_sq; // k = 1: 2! / (2 pi)^2
    Real y_pow = y2;        // y^(2k)
    Real prev_term_mag = make_real(0, wd);
    for (unsigned k = 1; k <= 4096; ++k) {
        const Real b2k = ((k % 2 == 1) ? 2 : -2) * r * zeta_even(2 * k, wd);
        const Real term = b2k / (2 * k * y_pow);
        const Real mag = abs(term);
        if (k > 1 && mag > prev_term_mag) {
            // Asymptotic series turned divergent before reaching tol; with the
            // 10*digits threshold this indicates a policy violation upstream.
            throw ConvergenceError("digamma: asymptotic series diverged before tolerance");
        }
        result -= term;
        if (mag < tol * abs(result)) {
            return result + shift;
        }
        prev_term_mag = mag;
        r *= Real((2 * k + 1) * (2 * k + 2), static_cast<unsigned>(wd)) / two_pi_sq;
        y_pow *= y2;
    }
    throw ConvergenceError("digamma: asymptotic series did not converge");
}

} // namespace qagap
