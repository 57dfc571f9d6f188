#include "qagap/asymptotic.hpp"

#include <cmath>
#include <limits>

#include "qagap/specfun.hpp"

namespace qagap {

namespace {

// ln 2 + psi_0(-1/2), the constant of the second-order correction.
double log2_plus_digamma_half(const PrecisionPolicy& prec) {
    const int d = prec.digits;
    const Real value = const_ln2(d) + digamma(make_real(-0.5, d), prec);
    return to_double(value);
}

GapRecord make_record(double n, double alpha, Method method, double log_gap) {
    GapRecord rec;
    rec.n = n;
    rec.alpha = alpha;
    rec.method = method;
    rec.log_gap = log_gap;
    rec.gap = std::exp(log_gap); // 0 on underflow; consumers prefer log_gap
    return rec;
}

} // namespace

Region classify_region(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError("classify_region: alpha must lie in (0, 1/2)");
    }
    if (alpha == 0.25 || alpha == 1.0 / 3.0) {
        throw BoundaryError("classify_region: alpha exactly on a region boundary");
    }
    if (alpha < 0.25) return Region::constant;
    if (alpha < 1.0 / 3.0) return Region::polynomial;
    return Region::exponential;
}

AsymptoticConstants asymptotic_constants(double alpha, double omega, double c,
                                         const PrecisionPolicy& prec) {
    const double base = log2_plus_digamma_half(prec);
    AsymptoticConstants out;
    out.kappa = 2.0 / std::sqrt(M_PI * omega) * base;
    out.second_order_coeff = 16.0 / (c * M_PI) * base;
    out.region = classify_region(alpha);
    return out;
}

GapRecord gap_first_order(double n, double alpha, double omega, double c) {
    if (!(n > 0)) throw DomainError("gap_first_order: n must be positive");
    const Region region = classify_region(alpha);
    const double log_eps = std::log(2.0 / n);

    if (region == Region::polynomial) {
        const double log_gap = std::log(8.0 * std::sqrt(omega) / (c * std::sqrt(M_PI))) +
                               (2.0 * alpha - 0.5) * log_eps;
        return make_record(n, alpha, Method::asymptotic1, log_gap);
    }
    if (region == Region::exponential) {
        const double log_gap = std::log(16.0 * omega / (c * std::sqrt(M_PI))) +
                               0.5 * alpha * log_eps -
                               std::sqrt(omega) * std::exp((0.5 - 1.5 * alpha) * log_eps);
        return make_record(n, alpha, Method::asymptotic1, log_gap);
    }
    throw RegimeError("gap_first_order: no asymptotic gap formula in the constant region");
}

GapRecord gap_second_order(double n, double alpha, double omega, double c,
                           const PrecisionPolicy& prec) {
    if (!(n > 0)) throw DomainError("gap_second_order: n must be positive");
    const Region region = classify_region(alpha);
    if (region != Region::polynomial) {
        throw RegimeError("gap_second_order: second-order expansion only valid for 1/4 < alpha < 1/3");
    }
    const double eps = 2.0 / n;
    const double leading = 8.0 * std::sqrt(omega) / (c * std::sqrt(M_PI)) *
                           std::pow(eps, 2.0 * alpha - 0.5);
    const double correction = 16.0 / (c * M_PI) * log2_plus_digamma_half(prec) *
                              std::pow(eps, 4.0 * alpha - 1.0);
    if (correction >= leading) {
        throw NegativeGapError("gap_second_order: correction exceeds leading term at this n");
    }
    const double gap = leading - correction;
    GapRecord rec;
    rec.n = n;
    rec.alpha = alpha;
    rec.method = Method::asymptotic2;
    rec.gap = gap;
    rec.log_gap = std::log(gap);
    return rec;
}

double kappa(double omega, const PrecisionPolicy& prec) {
    if (!(omega > 0)) throw DomainError("kappa: omega must be positive");
    return 2.0 / std::sqrt(M_PI * omega) * log2_plus_digamma_half(prec);
}

double n_threshold_estimate(double v, double alpha, double omega, const PrecisionPolicy& prec) {
    if (!(v > 0.0 && v < 1.0)) throw DomainError("n_threshold_estimate: v must lie in (0, 1)");
    const Region region = classify_region(alpha);
    if (region != Region::polynomial) {
        throw RegimeError("n_threshold_estimate: threshold estimate applies to the polynomial region only");
    }
    const double k = kappa(omega, prec);
    return 2.0 * std::exp(std::log(k / (1.0 - v)) / (2.0 * alpha - 0.5));
}

} // namespace qagap
