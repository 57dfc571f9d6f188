#pragma once

// Shared test oracles. Everything here is an independent computation path:
// none of it may call the routines it is used to check.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qagap/discrete.hpp"
#include "qagap/real.hpp"

namespace qagap::testing {

// ---------------------------------------------------------------------------
// Direct-summation Kummer oracle: every term built from fresh Pochhammer
// products (O(k^2) work), no term recurrence shared with the implementation.
inline Real kummer_direct_sum(double a, double b, double z, int terms, int digits) {
    Real sum = make_real(0, digits);
    for (int k = 0; k < terms; ++k) {
        Real num = make_real(1, digits);
        Real den = make_real(1, digits);
        for (int j = 0; j < k; ++j) {
            num *= make_real(a, digits) + j;
            den *= (make_real(b, digits) + j) * (j + 1);
        }
        sum += num / den * pow(make_real(z, digits), k);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Quadrature oracle for the parabolic cylinder function, valid for nu < 0:
//
//   D_nu(z) = e^(-z^2/4) / Gamma(-nu) * Int_0^inf t^(-nu-1) e^(-t^2/2 - z t) dt
//
// evaluated with exp-sinh (double-exponential) quadrature on (0, inf).
inline Real pcf_d_quadrature(double nu, double z, int digits) {
    const int wd = digits + 15;
    PrecisionGuard guard(wd);
    const Real half_pi = const_pi(wd) / 2;
    const Real nu_r = make_real(nu, wd);
    const Real z_r = make_real(z, wd);

    auto integrand = [&](const Real& t) {
        return pow(t, -nu_r - 1) * exp(-t * t / 2 - z_r * t);
    };

    auto sum_at = [&](double h_val) {
        const Real h = make_real(h_val, wd);
        const Real cutoff = pow10(-(digits + 10), wd);
        Real total = make_real(0, wd);
        for (int dir : {1, -1}) {
            for (int j = (dir == 1 ? 0 : 1); j < 100000; ++j) {
                const Real u = dir * j * h;
                const Real t = exp(half_pi * sinh(u));
                const Real w = half_pi * cosh(u) * t;
                const Real contrib = integrand(t) * w;
                total += contrib;
                if (j > 3 && abs(contrib) < cutoff * abs(total)) break;
            }
        }
        return total * h_val;
    };

    Real prev = sum_at(0.5);
    for (double h = 0.25; h > 1e-3; h /= 2) {
        const Real cur = sum_at(h);
        if (abs(cur - prev) < pow10(-(digits + 2), wd) * abs(cur)) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    return exp(-z_r * z_r / 4) / boost::multiprecision::tgamma(-nu_r) * prev;
}

// ---------------------------------------------------------------------------
// Symmetric-sector matrix of the full 2^n qubit Hamiltonian, built by explicit
// symmetrization: matrix elements <D_w'| H |D_w> with Dicke states enumerated
// over all 2^n basis states. Independent of build_hamiltonian.
inline Eigen::MatrixXd full_sector_matrix(int n, double s, const BarrierSpec& spec) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> norm(n + 1, 0.0); // sqrt(C(n, w))
    {
        std::vector<double> counts(n + 1, 0.0);
        for (std::size_t state = 0; state < dim; ++state) {
            counts[static_cast<std::size_t>(__builtin_popcountll(state))] += 1.0;
        }
        for (int w = 0; w <= n; ++w) norm[w] = std::sqrt(counts[w]);
    }

    // <D_w'|H|D_w> accumulated term by term over the full basis.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (std::size_t state = 0; state < dim; ++state) {
        const int w = __builtin_popcountll(state);
        h(w, w) += s * (w + barrier_value(w, n, spec)) / (norm[w] * norm[w]);
        for (int bit = 0; bit < n; ++bit) {
            const std::size_t flipped = state ^ (std::size_t{1} << bit);
            const int w2 = __builtin_popcountll(flipped);
            h(w2, w) += -(1.0 - s) / (norm[w2] * norm[w]);
        }
    }
    return h;
}

// Lowest two eigenvalues of a dense symmetric matrix (Eigen oracle).
inline std::pair<double, double> eigen_lowest_two(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return {solver.eigenvalues()(0), solver.eigenvalues()(1)};
}

inline std::pair<double, double> eigen_lowest_two(const TridiagonalMatrix& t) {
    const auto dim = static_cast<Eigen::Index>(t.diag.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        m(i, i) = t.diag[static_cast<std::size_t>(i)];
        if (i + 1 < dim) {
            m(i, i + 1) = t.offdiag[static_cast<std::size_t>(i)];
            m(i + 1, i) = t.offdiag[static_cast<std::size_t>(i)];
        }
    }
    return eigen_lowest_two(m);
}

} // namespace qagap::testing
