#pragma once

#include "qagap/gap_record.hpp"
#include "qagap/precision.hpp"

namespace qagap {

// Gap scaling regions by barrier power alpha: constant (alpha < 1/4),
// polynomial (1/4 < alpha < 1/3), exponential (1/3 < alpha < 1/2).
enum class Region { constant, polynomial, exponential };

inline std::string_view region_name(Region r) {
    switch (r) {
    case Region::constant: return "constant";
    case Region::polynomial: return "polynomial";
    case Region::exponential: return "exponential";
    }
    return "unknown";
}

// Throws BoundaryError at alpha exactly 1/4 or 1/3, DomainError outside (0, 1/2).
Region classify_region(double alpha);

struct AsymptoticConstants {
    double kappa;              // (2/sqrt(pi*omega)) (ln 2 + psi_0(-1/2))
    double second_order_coeff; // (16/(c*pi)) (ln 2 + psi_0(-1/2))
    Region region;
};

AsymptoticConstants asymptotic_constants(double alpha, double omega, double c,
                                         const PrecisionPolicy& prec);

// Leading-order asymptotic gap:
//   polynomial:  g = (8 sqrt(omega) / (c sqrt(pi))) eps^(2a - 1/2)
//   exponential: g = (16 omega / (c sqrt(pi))) eps^(a/2) exp(-sqrt(omega) eps^(1/2 - 3a/2))
// The exponential branch is evaluated in log space; when the value underflows
// double range the record carries gap = 0 and log_gap only.
GapRecord gap_first_order(double n, double alpha, double omega, double c);

// Second-order expansion (polynomial region only):
//   g = (8 sqrt(omega)/(c sqrt(pi))) eps^(2a-1/2) - (16/(c pi)) (ln2 + psi_0(-1/2)) eps^(4a-1)
// Throws NegativeGapError when the correction exceeds the leading term.
GapRecord gap_second_order(double n, double alpha, double omega, double c,
                           const PrecisionPolicy& prec);

// The second-order ratio constant: g2/g1 = 1 - kappa(omega) eps^(2a-1/2).
double kappa(double omega, const PrecisionPolicy& prec);

// n needed for the second-order/first-order ratio to reach v:
//   n(v) = 2 (kappa / (1-v))^(1/(2a-1/2))
double n_threshold_estimate(double v, double alpha, double omega, const PrecisionPolicy& prec);

} // namespace qagap
