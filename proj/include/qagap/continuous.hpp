#pragma once

#include "qagap/gap_record.hpp"
#include "qagap/precision.hpp"
#include "qagap/real.hpp"

namespace qagap {

// Coupling constant tying the continuous well to the qubit problem,
// c = 8 / (3 (sqrt(3) - 1)).
double paper_c();
Real paper_c_real(int digits);

constexpr double kDefaultOmega = 4.0 / 3.0;

enum class Parity { even, odd };

// Rescaled double-well parameters at working precision:
//   epsilon        = 2/n
//   a              = width_scale * epsilon^(1-alpha) / 2     (barrier half-width)
//   barrier_height = height_scale * omega * epsilon^(1-alpha)
//   z0             = sqrt(2*omega/epsilon) * a
//
// width_scale / height_scale are test hooks (1 = the paper family; width 0 =
// pure harmonic well; height scaling varies the barrier while the outer well
// is held fixed).
struct ContinuousModel {
    double n = 0;
    double alpha = 0;
    double omega = kDefaultOmega;
    double c = 0;
    int digits = 30;
    double width_scale = 1.0;
    double height_scale = 1.0;

    Real n_r, epsilon, omega_r, c_r, a, barrier_height, z0, sqrt_2w_eps;

    static ContinuousModel make(double n, double alpha, double omega, double c, int digits,
                                double width_scale = 1.0, double height_scale = 1.0);

    bool has_barrier() const { return width_scale > 0.0 && height_scale > 0.0; }
};

// Derived quantities of the matching condition at energy E:
//   nu = c E / (2 omega) - 1/2
//   k  = sqrt(omega_b * epsilon^(-1-alpha) - c E / epsilon)
// Throws RegimeError when k^2 <= 0 (energy at/above the barrier top).
struct MatchingContext {
    Parity parity;
    Real energy;
    Real nu;
    Real k;

    static MatchingContext make(const ContinuousModel& model, Parity parity, const Real& energy);
};

// The parity matching function whose roots are the eigenenergies:
//   F(E) = k D_nu(z0) (e^(ka) -/+ e^(-ka)) - sqrt(2w/eps) D'_nu(z0) (e^(ka) +/- e^(-ka))
// (upper signs: even parity). When k*a > digits*ln(10) the common e^(ka)
// factor is divided out analytically; the rescaled function has the same
// roots.
Real matching_function(const ContinuousModel& model, Parity parity, const Real& energy,
                       const PrecisionPolicy& prec);

// Smallest root of the matching function for the given parity: scan cE over
// (1e-6*omega, 8*omega] with 4096 points for the first sign change, then
// bisect to relative width 10^-(digits-8). The odd scan starts at the even
// root. Throws NoRootError if no sign change is found and RegimeError when
// the model is outside the tunneling regime (barrier top must exceed 4*omega
// in cE units).
Real solve_parity_energy(const ContinuousModel& model, Parity parity, const PrecisionPolicy& prec);

struct ContinuousGapOptions {
    int digits_cap = 4096;
    double width_scale = 1.0;
    double height_scale = 1.0;
};

// Exact continuous gap E_odd - E_even at adaptive precision: digits are
// doubled until the relative change of the gap itself is below 1e-6.
// In the exponential region the starting digits absorb the e^(-2ka)
// cancellation between the two energies. digits_used is recorded.
GapRecord continuous_gap(double n, double alpha, double omega, double c,
                         const PrecisionPolicy& prec, const ContinuousGapOptions& opts = {});

} // namespace qagap
