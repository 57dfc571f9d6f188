#include "qagap/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qagap {

void TridiagonalMatrix::validate() const {
    if (diag.empty() || offdiag.size() + 1 != diag.size()) {
        throw DomainError("TridiagonalMatrix: offdiag must be one entry shorter than diag");
    }
    for (double v : diag) {
        if (!std::isfinite(v)) throw DomainError("TridiagonalMatrix: non-finite diagonal entry");
    }
    for (double v : offdiag) {
        if (!std::isfinite(v)) throw DomainError("TridiagonalMatrix: non-finite off-diagonal entry");
    }
}

double barrier_value(std::int64_t w, std::int64_t n, const BarrierSpec& spec) {
    spec.validate();
    if (w < 0 || w > n) {
        throw DomainError("barrier_value: w outside [0, n]");
    }
    if (spec.height_coeff == 0.0) return 0.0;
    const double nd = static_cast<double>(n);
    const double height = spec.height_coeff * std::pow(nd, spec.alpha);

    if (spec.shape == BarrierShape::square) {
        const double half_width = spec.width_coeff * std::pow(nd, spec.alpha) / 2.0;
        return std::abs(static_cast<double>(w) - spec.center_fraction * nd) <= half_width ? height
                                                                                          : 0.0;
    }

    // Binomial profile: height * C(M, w - w_c + M/2) / C(M, M/2) on the
    // support |w - w_c| <= M/2, with even full width M ~ n^(2*alpha).
    const auto m_width =
        2 * static_cast<std::int64_t>(std::floor(spec.width_coeff * std::pow(nd, 2.0 * spec.alpha) / 2.0));
    const auto w_center = static_cast<std::int64_t>(std::llround(spec.center_fraction * nd));
    const std::int64_t offset = w - w_center + m_width / 2;
    if (offset < 0 || offset > m_width) return 0.0;
    // C(M, j)/C(M, M/2) via log-gamma; M can reach ~n^(2*alpha) ~ 10^4.
    const double log_ratio = std::lgamma(static_cast<double>(m_width / 2 + 1)) * 2.0 -
                             std::lgamma(static_cast<double>(offset + 1)) -
                             std::lgamma(static_cast<double>(m_width - offset + 1));
    return height * std::exp(log_ratio);
}

TridiagonalMatrix build_hamiltonian(std::int64_t n, double s, const BarrierSpec& spec) {
    if (n < 1) throw DomainError("build_hamiltonian: n must be positive");
    TridiagonalMatrix m;
    m.diag.resize(static_cast<std::size_t>(n) + 1);
    m.offdiag.resize(static_cast<std::size_t>(n));
    for (std::int64_t w = 0; w <= n; ++w) {
        m.diag[static_cast<std::size_t>(w)] = s * (static_cast<double>(w) + barrier_value(w, n, spec));
    }
    for (std::int64_t w = 0; w < n; ++w) {
        m.offdiag[static_cast<std::size_t>(w)] =
            -(1.0 - s) * std::sqrt(static_cast<double>(w + 1) * static_cast<double>(n - w));
    }
    return m;
}

namespace {

struct SturmWorkspace {
    const double* diag;
    const double* offdiag_sq;
    std::size_t dim;
    double pivmin;
};

// Number of eigenvalues <= lambda via the LDL pivot recursion. Pivots at or
// below pivmin are counted as negative and clamped (the LAPACK convention),
// which keeps the count monotone when a bisection point hits a pivot exactly.
int count_below(const SturmWorkspace& ws, double lambda) {
    int count = 0;
    double q = ws.diag[0] - lambda;
    if (q <= ws.pivmin) {
        ++count;
        if (q > -ws.pivmin) q = -ws.pivmin;
    }
    for (std::size_t i = 1; i < ws.dim; ++i) {
        q = (ws.diag[i] - lambda) - ws.offdiag_sq[i - 1] / q;
        if (q <= ws.pivmin) {
            ++count;
            if (q > -ws.pivmin) q = -ws.pivmin;
        }
    }
    return count;
}

// k-th smallest eigenvalue (k = 0-based) of an irreducible block.
double bisect_eigenvalue(const SturmWorkspace& ws, double lo0, double hi0, double rel_tol, int k) {
    const double diam = hi0 - lo0;
    double lo = lo0, hi = hi0;
    const double eps = std::numeric_limits<double>::epsilon();
    while (true) {
        const double width = hi - lo;
        if (width <= rel_tol * diam) break;
        if (width <= 2.0 * eps * (std::abs(lo) + std::abs(hi)) + ws.pivmin) break;
        const double mid = 0.5 * (lo + hi);
        if (count_below(ws, mid) >= k + 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Lowest (up to) two eigenvalues of an irreducible tridiagonal block.
void block_lowest_two(const double* diag, const double* offdiag, std::size_t dim, double rel_tol,
                      std::vector<double>& out) {
    if (dim == 1) {
        out.push_back(diag[0]);
        return;
    }
    std::vector<double> e2(dim - 1);
    double max_e2 = 0.0;
    for (std::size_t i = 0; i + 1 < dim; ++i) {
        e2[i] = offdiag[i] * offdiag[i];
        max_e2 = std::max(max_e2, e2[i]);
    }
    double lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < dim; ++i) {
        const double left = (i > 0) ? std::abs(offdiag[i - 1]) : 0.0;
        const double right = (i + 1 < dim) ? std::abs(offdiag[i]) : 0.0;
        lo = std::min(lo, diag[i] - left - right);
        hi = std::max(hi, diag[i] + left + right);
    }
    if (hi == lo) { // scalar multiple of identity cannot occur with nonzero offdiag, but guard
        hi = lo + 1.0;
    }
    SturmWorkspace ws{diag, e2.data(), dim,
                      std::numeric_limits<double>::min() * std::max(1.0, max_e2)};
    out.push_back(bisect_eigenvalue(ws, lo, hi, rel_tol, 0));
    out.push_back(bisect_eigenvalue(ws, lo, hi, rel_tol, 1));
}

} // namespace

int sturm_count_below(const TridiagonalMatrix& m, double lambda) {
    m.validate();
    std::vector<double> e2(m.offdiag.size());
    double max_e2 = 0.0;
    for (std::size_t i = 0; i < m.offdiag.size(); ++i) {
        e2[i] = m.offdiag[i] * m.offdiag[i];
        max_e2 = std::max(max_e2, e2[i]);
    }
    SturmWorkspace ws{m.diag.data(), e2.data(), m.diag.size(),
                      std::numeric_limits<double>::min() * std::max(1.0, max_e2)};
    return count_below(ws, lambda);
}

std::pair<double, double> lowest_two_eigenvalues(const TridiagonalMatrix& m, double rel_tol) {
    m.validate();
    if (!(rel_tol > 0)) throw DomainError("lowest_two_eigenvalues: rel_tol must be positive");
    if (m.diag.size() < 2) {
        throw DomainError("lowest_two_eigenvalues: need dimension >= 2");
    }

    // Zero off-diagonals decompose the matrix; solve blocks and merge spectra.
    std::vector<double> candidates;
    std::size_t block_start = 0;
    for (std::size_t i = 0; i <= m.offdiag.size(); ++i) {
        const bool cut = (i == m.offdiag.size()) || (m.offdiag[i] == 0.0);
        if (!cut) continue;
        const std::size_t dim = i + 1 - block_start;
        block_lowest_two(m.diag.data() + block_start, m.offdiag.data() + block_start, dim, rel_tol,
                         candidates);
        block_start = i + 1;
    }
    std::sort(candidates.begin(), candidates.end());
    return {candidates[0], candidates[1]};
}

double gap_at_s(std::int64_t n, double s, const BarrierSpec& spec, double rel_tol) {
    const TridiagonalMatrix m = build_hamiltonian(n, s, spec);
    const auto [lo, hi] = lowest_two_eigenvalues(m, rel_tol);
    return hi - lo;
}

GapRecord min_gap_discrete(std::int64_t n, const BarrierSpec& spec, int s_grid, double rel_tol,
                           MinGapDiagnostics* diag) {
    if (s_grid < 64) throw DomainError("min_gap_discrete: s_grid must be >= 64");
    spec.validate();

    std::vector<double> gaps(static_cast<std::size_t>(s_grid));
    const double step = 1.0 / (s_grid - 1);
    std::size_t best = 0;
    for (int i = 0; i < s_grid; ++i) {
        gaps[static_cast<std::size_t>(i)] = gap_at_s(n, i * step, spec, rel_tol);
        if (gaps[static_cast<std::size_t>(i)] < gaps[best]) best = static_cast<std::size_t>(i);
    }

    if (diag) {
        std::vector<double> sorted = gaps;
        std::nth_element(sorted.begin(), sorted.begin() + 2, sorted.end());
        diag->flat_minimum = (sorted[2] - *std::min_element(sorted.begin(), sorted.begin() + 3)) <
                             rel_tol;
    }

    // Golden-section refinement around the grid minimizer.
    double a = (best == 0) ? 0.0 : (best - 1) * step;
    double b = (best + 1 >= gaps.size()) ? 1.0 : (best + 1) * step;
    double best_s = best * step;
    double best_gap = gaps[best];

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = gap_at_s(n, x1, spec, rel_tol);
    double f2 = gap_at_s(n, x2, spec, rel_tol);
    while (b - a > 1e-10) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = gap_at_s(n, x1, spec, rel_tol);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = gap_at_s(n, x2, spec, rel_tol);
        }
        if (f1 < best_gap) { best_gap = f1; best_s = x1; }
        if (f2 < best_gap) { best_gap = f2; best_s = x2; }
    }

    GapRecord rec;
    rec.n = static_cast<double>(n);
    rec.alpha = spec.alpha;
    rec.method = Method::discrete;
    rec.gap = best_gap;
    rec.log_gap = std::log(best_gap);
    rec.s_star = best_s;
    return rec;
}

std::vector<std::int64_t> barrier_width_transitions(double n_min, double n_max,
                                                    const BarrierSpec& spec) {
    spec.validate();
    const double exponent = (spec.shape == BarrierShape::binomial) ? 2.0 * spec.alpha : spec.alpha;
    auto width_floor = [&](std::int64_t n) {
        return std::floor(spec.width_coeff * std::pow(static_cast<double>(n), exponent));
    };
    std::vector<std::int64_t> out;
    const auto lo = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(n_min)));
    const auto hi = static_cast<std::int64_t>(std::floor(n_max));
    double prev = width_floor(lo - 1);
    for (std::int64_t n = lo; n <= hi; ++n) {
        const double cur = width_floor(n);
        if (cur > prev) out.push_back(n);
        prev = cur;
    }
    return out;
}

} // namespace qagap
