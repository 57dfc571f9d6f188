#include "qagap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qagap {

double SeriesPoint::f() const {
    if (log_gap) return *log_gap;
    if (gap && *gap > 0) return std::log(*gap);
    throw DomainError("SeriesPoint: no usable gap value (need gap > 0 or log_gap)");
}

double SeriesPoint::x() const {
    if (!(n > 0)) throw DomainError("SeriesPoint: n must be positive");
    return std::log(n);
}

void ScalingSeries::validate(std::size_t min_points) const {
    if (points.size() < min_points) {
        throw DomainError("ScalingSeries: too few points for this operation");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i].n > points[i - 1].n)) {
            throw DomainError("ScalingSeries: n must be strictly increasing");
        }
    }
}

namespace {

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double rms = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& f) {
    const auto m = static_cast<double>(x.size());
    double xm = 0, fm = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xm += x[i];
        fm += f[i];
    }
    xm /= m;
    fm /= m;
    double sxx = 0, sxf = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxf += (x[i] - xm) * (f[i] - fm);
    }
    if (sxx == 0) {
        throw DegenerateError("power_fit: all n equal; slope undefined");
    }
    LineFit out;
    out.slope = sxf / sxx;
    out.intercept = fm - out.slope * xm;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = f[i] - (out.intercept + out.slope * x[i]);
        ss += r * r;
    }
    out.rms = std::sqrt(ss / m);
    return out;
}

FitResult power_fit_span(const std::vector<SeriesPoint>& pts, std::size_t lo, std::size_t hi) {
    std::vector<double> x, f;
    x.reserve(hi - lo);
    f.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
        x.push_back(pts[i].x());
        f.push_back(pts[i].f());
    }
    const LineFit line = fit_line(x, f);
    FitResult out;
    out.model = FitModel::power;
    out.p = -line.slope;
    out.A = std::exp(line.intercept);
    out.residual = line.rms;
    out.n_range = {pts[lo].n, pts[hi - 1].n};
    return out;
}

} // namespace

FitResult power_fit(const ScalingSeries& series) {
    series.validate(2);
    return power_fit_span(series.points, 0, series.points.size());
}

std::vector<FitResult> binned_power_fits(const ScalingSeries& series,
                                         const std::vector<std::pair<double, double>>& bins) {
    series.validate(2);
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    std::string empties;
    for (const auto& [n_lo, n_hi] : bins) {
        std::size_t lo = series.points.size(), hi = 0;
        for (std::size_t i = 0; i < series.points.size(); ++i) {
            if (series.points[i].n >= n_lo && series.points[i].n <= n_hi) {
                lo = std::min(lo, i);
                hi = std::max(hi, i + 1);
            }
        }
        if (lo >= hi || hi - lo < 2) {
            std::ostringstream os;
            os << (empties.empty() ? "" : ", ") << "[" << n_lo << ", " << n_hi << "]";
            empties += os.str();
            continue;
        }
        spans.emplace_back(lo, hi);
    }
    if (!empties.empty()) {
        throw EmptyBinError("binned_power_fits: bins with fewer than two points: " + empties);
    }
    std::vector<FitResult> out;
    out.reserve(spans.size());
    for (const auto& [lo, hi] : spans) {
        out.push_back(power_fit_span(series.points, lo, hi));
    }
    return out;
}

namespace {

// Inner linear least squares of f = u - C * e^(q (x - x_ref)); returns the
// sum of squared residuals and the fitted (u, C_scaled).
struct InnerFit {
    double u = 0;
    double c_scaled = 0;
    double ss = std::numeric_limits<double>::infinity();
};

InnerFit exp_inner_fit(const std::vector<double>& x, const std::vector<double>& f, double q,
                       double x_ref) {
    const auto m = static_cast<double>(x.size());
    double sp = 0, spp = 0, sf = 0, spf = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double phi = std::exp(q * (x[i] - x_ref));
        sp += phi;
        spp += phi * phi;
        sf += f[i];
        spf += phi * f[i];
    }
    // Normal equations for f ~ u - C phi.
    const double det = m * spp - sp * sp;
    InnerFit out;
    if (det == 0 || !std::isfinite(det)) return out;
    out.c_scaled = -(m * spf - sp * sf) / det;
    out.u = (sf + out.c_scaled * sp) / m;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double phi = std::exp(q * (x[i] - x_ref));
        const double r = f[i] - (out.u - out.c_scaled * phi);
        ss += r * r;
    }
    out.ss = ss;
    return out;
}

} // namespace

FitResult exponential_fit(const ScalingSeries& series) {
    series.validate(4);
    std::vector<double> x, f;
    for (const auto& pt : series.points) {
        x.push_back(pt.x());
        f.push_back(pt.f());
    }
    const double x_ref = x.back(); // rescale e^(qx) to avoid overflow at large n

    constexpr double q_lo = 0.01, q_hi = 1.0;
    constexpr int coarse = 128;
    double best_q = q_lo;
    double best_ss = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= coarse; ++i) {
        const double q = q_lo + (q_hi - q_lo) * i / coarse;
        const double ss = exp_inner_fit(x, f, q, x_ref).ss;
        if (ss < best_ss) {
            best_ss = ss;
            best_q = q;
        }
    }
    if (!std::isfinite(best_ss)) {
        throw ConvergenceError("exponential_fit: least-squares system degenerate for all q");
    }

    // Golden-section refinement within the neighbouring coarse cells.
    const double cell = (q_hi - q_lo) / coarse;
    double a = std::max(q_lo, best_q - cell);
    double b = std::min(q_hi, best_q + cell);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = exp_inner_fit(x, f, x1, x_ref).ss;
    double f2 = exp_inner_fit(x, f, x2, x_ref).ss;
    while (b - a > 1e-12) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = exp_inner_fit(x, f, x1, x_ref).ss;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = exp_inner_fit(x, f, x2, x_ref).ss;
        }
    }
    const double q = 0.5 * (a + b);
    const InnerFit inner = exp_inner_fit(x, f, q, x_ref);

    FitResult out;
    out.model = FitModel::exponential;
    out.q = q;
    out.C = inner.c_scaled * std::exp(-q * x_ref);
    out.B = std::exp(inner.u);
    out.residual = std::sqrt(inner.ss / static_cast<double>(x.size()));
    out.n_range = {series.points.front().n, series.points.back().n};
    return out;
}

DerivativeRatioResult derivative_ratio(const ScalingSeries& series) {
    series.validate(3);
    std::vector<double> x, f;
    for (const auto& pt : series.points) {
        x.push_back(pt.x());
        f.push_back(pt.f());
    }
    const double h = x[1] - x[0];
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const double hi = x[i + 1] - x[i];
        if (std::abs(hi - h) > 1e-9 * std::abs(h)) {
            throw NonUniformGridError("derivative_ratio: series not uniform in ln n");
        }
    }

    DerivativeRatioResult out;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const double fp = (f[i + 1] - f[i - 1]) / (2.0 * h);
        const double fpp = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
        if (std::abs(fp) < 1e-12) {
            out.omitted_n.push_back(series.points[i].n);
            continue;
        }
        out.points.push_back(RatioPoint{series.points[i].n, fpp / fp});
    }
    return out;
}

double threshold_n_ratio(double alpha, double v, const GapFn& gap_exact,
                         const GapFn& gap_reference, double n_lo, double n_hi) {
    if (!(v > 0.0 && v < 1.0)) throw DomainError("threshold_n_ratio: v must lie in (0, 1)");
    if (!(n_lo > 0.0 && n_lo < n_hi)) throw DomainError("threshold_n_ratio: need 0 < n_lo < n_hi");

    auto ratio = [&](double n) {
        const GapRecord e = gap_exact(n);
        const GapRecord r = gap_reference(n);
        const double fe = e.log_gap ? *e.log_gap : std::log(e.gap);
        const double fr = r.log_gap ? *r.log_gap : std::log(r.gap);
        return std::exp(fe - fr);
    };

    const double r_lo = ratio(n_lo);
    const double r_hi = ratio(n_hi);
    if (!(r_lo < v && v < r_hi)) {
        std::ostringstream os;
        os << "threshold_n_ratio: v = " << v << " not bracketed: ratio(" << n_lo << ") = " << r_lo
           << ", ratio(" << n_hi << ") = " << r_hi;
        throw BracketError(os.str());
    }

    // Monotonicity probe on an 8-point log grid before bisecting.
    const double x_lo = std::log(n_lo), x_hi = std::log(n_hi);
    double prev = r_lo;
    for (int i = 1; i < 8; ++i) {
        const double n = std::exp(x_lo + (x_hi - x_lo) * i / 7.0);
        const double r = (i == 7) ? r_hi : ratio(n);
        if (r < prev - 1e-9) {
            std::ostringstream os;
            os << "threshold_n_ratio: ratio not monotone near n = " << n << " (alpha = " << alpha
               << ")";
            throw NonMonotoneError(os.str());
        }
        prev = r;
    }

    double a = x_lo, b = x_hi;
    while (b - a > 1e-3) {
        const double mid = 0.5 * (a + b);
        if (ratio(std::exp(mid)) < v) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return std::exp(0.5 * (a + b));
}

} // namespace qagap
