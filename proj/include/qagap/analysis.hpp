#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qagap/errors.hpp"
#include "qagap/gap_record.hpp"

namespace qagap {

// One sample of a gap-vs-n series. When log_gap is present it takes
// precedence (exponential-region gaps underflow double).
struct SeriesPoint {
    double n = 0;
    std::optional<double> gap;
    std::optional<double> log_gap;

    double f() const; // ln(gap)
    double x() const; // ln(n)
};

// Ordered gap series for one (alpha, method).
struct ScalingSeries {
    std::vector<SeriesPoint> points;
    double alpha = 0;
    Method method = Method::continuous;

    void validate(std::size_t min_points) const;
};

enum class FitModel { power, exponential };

// g = A n^-p (power) or g = B exp(-C n^q) (exponential). Only the declared
// model's fields are populated. residual is the RMS of ln-gap residuals.
struct FitResult {
    FitModel model = FitModel::power;
    std::optional<double> A, p;
    std::optional<double> B, C, q;
    double residual = 0;
    std::pair<double, double> n_range{0, 0};
};

// Least-squares line on (ln n, ln g); slope = -p, intercept = ln A.
FitResult power_fit(const ScalingSeries& series);

// power_fit restricted to each [n_lo, n_hi] bin, in order. Throws
// EmptyBinError naming every bin with fewer than two points.
std::vector<FitResult> binned_power_fits(const ScalingSeries& series,
                                         const std::vector<std::pair<double, double>>& bins);

// Fits f = ln B - C e^(q x) by golden-section search over q in [0.01, 1]
// with an inner linear least-squares solve for (ln B, C).
FitResult exponential_fit(const ScalingSeries& series);

struct RatioPoint {
    double n = 0;
    double R = 0; // f''(x) / f'(x) at x = ln n
};

struct DerivativeRatioResult {
    std::vector<RatioPoint> points;
    std::vector<double> omitted_n; // interior points where |f'| < 1e-12
};

// Central-difference derivative ratio R = f''/f' on a uniform ln-n grid.
// Throws NonUniformGridError when consecutive spacings deviate by more than
// 1e-9 relative.
DerivativeRatioResult derivative_ratio(const ScalingSeries& series);

using GapFn = std::function<GapRecord(double n)>;

// Smallest n where gap_exact(n)/gap_reference(n) crosses v, found by
// bisection on ln n to width 1e-3. Requires the ratio to bracket v over
// [n_lo, n_hi] (BracketError) and to be monotone on an 8-point log grid
// (NonMonotoneError).
double threshold_n_ratio(double alpha, double v, const GapFn& gap_exact,
                         const GapFn& gap_reference, double n_lo, double n_hi);

} // namespace qagap
