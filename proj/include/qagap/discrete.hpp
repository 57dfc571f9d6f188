#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qagap/errors.hpp"
#include "qagap/gap_record.hpp"

namespace qagap {

enum class BarrierShape { square, binomial };

inline std::string_view barrier_shape_name(BarrierShape s) {
    return s == BarrierShape::square ? "square" : "binomial";
}

inline BarrierShape barrier_shape_from_string(std::string_view s) {
    if (s == "square") return BarrierShape::square;
    if (s == "binomial") return BarrierShape::binomial;
    throw DomainError("unknown barrier shape: " + std::string(s));
}

// Shape, center and scaling of the cost-function barrier b(w). Width and
// height grow as n^alpha (the binomial profile's full width as n^(2*alpha)).
// height_coeff = 0 turns the barrier off (used by the no-barrier oracles).
struct BarrierSpec {
    BarrierShape shape = BarrierShape::square;
    double alpha = 0.3;
    double height_coeff = 1.0;
    double width_coeff = 1.0;
    double center_fraction = 0.25;

    void validate() const {
        if (!(alpha > 0.0 && alpha < 0.5)) {
            throw DomainError("BarrierSpec: alpha must lie in (0, 1/2)");
        }
        if (!(center_fraction > 0.0 && center_fraction < 1.0)) {
            throw DomainError("BarrierSpec: center_fraction must lie in (0, 1)");
        }
        if (height_coeff < 0.0 || !(width_coeff > 0.0)) {
            throw DomainError("BarrierSpec: coefficients must be positive (height may be 0)");
        }
    }
};

// Symmetric-subspace Hamiltonian at fixed s: (n+1)-dimensional tridiagonal.
struct TridiagonalMatrix {
    std::vector<double> diag;
    std::vector<double> offdiag; // one entry shorter than diag

    void validate() const;
};

// Barrier value b(w) at Hamming weight w for an n-bit problem.
double barrier_value(std::int64_t w, std::int64_t n, const BarrierSpec& spec);

// H(s) = (1-s) H0 + s H1 reduced to the symmetric subspace:
//   diag[w]    = s * (w + b(w))
//   offdiag[w] = -(1-s) * sqrt((w+1)(n-w))
TridiagonalMatrix build_hamiltonian(std::int64_t n, double s, const BarrierSpec& spec);

// Two smallest eigenvalues by Sturm-sequence bisection, each refined until the
// bracket width is <= rel_tol * (Gershgorin diameter). Zero off-diagonal
// entries split the matrix into blocks whose spectra are merged.
std::pair<double, double> lowest_two_eigenvalues(const TridiagonalMatrix& m, double rel_tol);

// Number of eigenvalues of m strictly below lambda (Sturm count). Exposed for
// the property tests.
int sturm_count_below(const TridiagonalMatrix& m, double lambda);

// Spectral gap lambda_1 - lambda_0 at interpolation parameter s.
double gap_at_s(std::int64_t n, double s, const BarrierSpec& spec, double rel_tol = 1e-13);

struct MinGapDiagnostics {
    bool flat_minimum = false; // three smallest grid values within rel_tol
};

// Minimum gap over s in [0,1]: uniform grid scan (s_grid >= 64 points)
// followed by golden-section refinement of the grid minimizer to
// |delta s| <= 1e-10. s_star is recorded on the returned record.
GapRecord min_gap_discrete(std::int64_t n, const BarrierSpec& spec, int s_grid = 512,
                           double rel_tol = 1e-13, MinGapDiagnostics* diag = nullptr);

// Integers n in [n_min, n_max] where the discrete barrier width
// floor(width(n)) has just increased (width n^alpha for square profiles,
// n^(2*alpha) for binomial).
std::vector<std::int64_t> barrier_width_transitions(double n_min, double n_max,
                                                    const BarrierSpec& spec);

} // namespace qagap
