#include <doctest.h>

#include <cmath>

#include "qagap/analysis.hpp"
#include "qagap/asymptotic.hpp"

using namespace qagap;

namespace {

ScalingSeries synthetic_power(double A, double p, double n0, double n1, int per_decade) {
    ScalingSeries s;
    s.alpha = 0.3;
    s.method = Method::continuous;
    const double h = std::log(10.0) / per_decade;
    for (double x = std::log(n0); x <= std::log(n1) + 1e-12; x += h) {
        const double n = std::exp(x);
        SeriesPoint pt;
        pt.n = n;
        pt.gap = A * std::pow(n, -p);
        s.points.push_back(pt);
    }
    return s;
}

ScalingSeries synthetic_exponential(double B, double C, double q, double n0, double n1,
                                    int per_decade) {
    ScalingSeries s;
    s.alpha = 0.45;
    s.method = Method::continuous;
    const double h = std::log(10.0) / per_decade;
    for (double x = std::log(n0); x <= std::log(n1) + 1e-12; x += h) {
        const double n = std::exp(x);
        SeriesPoint pt;
        pt.n = n;
        pt.log_gap = std::log(B) - C * std::pow(n, q); // stays finite where gap would underflow
        s.points.push_back(pt);
    }
    return s;
}

} // namespace

TEST_CASE("power_fit recovers an exact power law") {
    const auto series = synthetic_power(5.0, 2.0, 10.0, 1e5, 8);
    const auto fit = power_fit(series);
    CHECK(*fit.A == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(*fit.p == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.residual < 1e-13);
    CHECK(fit.model == FitModel::power);
    CHECK(!fit.B.has_value());
}

TEST_CASE("power_fit preconditions") {
    ScalingSeries s;
    s.points.push_back({10.0, 1.0, std::nullopt});
    CHECK_THROWS_AS(power_fit(s), DomainError); // too few points
    s.points.push_back({10.0, 0.5, std::nullopt});
    CHECK_THROWS_AS(power_fit(s), DomainError); // n not strictly increasing
}

TEST_CASE("binned_power_fits: exact power law gives identical p in every bin") {
    const auto series = synthetic_power(2.0, 0.7, 100.0, 1e6, 8);
    const std::vector<std::pair<double, double>> bins{{100, 1e3}, {1e3, 1e4}, {1e4, 1e6}};
    const auto fits = binned_power_fits(series, bins);
    REQUIRE(fits.size() == 3);
    for (const auto& fit : fits) {
        CHECK(*fit.p == doctest::Approx(0.7).epsilon(1e-11));
    }
    // single bin covering everything equals the plain fit
    const auto whole = binned_power_fits(series, {{100, 1e6}});
    CHECK(*whole[0].p == doctest::Approx(*power_fit(series).p).epsilon(1e-14));
}

TEST_CASE("binned_power_fits names empty bins") {
    const auto series = synthetic_power(2.0, 0.7, 100.0, 1e4, 4);
    try {
        binned_power_fits(series, {{100, 1e3}, {1e7, 1e9}});
        FAIL("expected EmptyBinError");
    } catch (const EmptyBinError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("1e+07") != std::string::npos);
    }
}

TEST_CASE("exponential_fit recovers an exact stretched exponential") {
    const auto series = synthetic_exponential(3.0, 0.2, 0.25, 100.0, 1e6, 8);
    const auto fit = exponential_fit(series);
    CHECK(*fit.q == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(*fit.C == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(*fit.B == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(fit.model == FitModel::exponential);
}

TEST_CASE("exponential_fit on a pure power law pins q at the lower edge") {
    const auto series = synthetic_power(5.0, 0.8, 100.0, 1e6, 8);
    const auto fit = exponential_fit(series);
    CHECK(*fit.q < 0.02); // pushed to the bracket edge
    // residual comparison favors the power model
    CHECK(power_fit(series).residual < fit.residual + 1e-12);
}

TEST_CASE("derivative_ratio: zero for power laws, q for exponentials") {
    const auto power = synthetic_power(2.0, 1.3, 100.0, 1e5, 16);
    for (const auto& pt : derivative_ratio(power).points) {
        CHECK(std::abs(pt.R) < 1e-8);
    }
    const auto expo = synthetic_exponential(1.0, 0.05, 0.25, 100.0, 1e5, 16);
    for (const auto& pt : derivative_ratio(expo).points) {
        CHECK(std::abs(pt.R - 0.25) < 1e-3);
    }
}

TEST_CASE("derivative_ratio R-diagnostic calibration at 16 points per decade") {
    for (double q : {0.05, 0.1, 0.175, 0.25, 0.35}) {
        const auto expo = synthetic_exponential(2.0, 0.1, q, 1e3, 1e6, 16);
        const auto result = derivative_ratio(expo);
        REQUIRE(!result.points.empty());
        for (const auto& pt : result.points) {
            CHECK(std::abs(pt.R - q) < 1e-4);
        }
    }
    // At the top of the q range the central-difference truncation error
    // q^3 h^2 / 12 dominates; check against that law instead of a flat 1e-4.
    const double h = std::log(10.0) / 16.0;
    const auto steep = synthetic_exponential(2.0, 0.1, 0.5, 1e3, 1e6, 16);
    for (const auto& pt : derivative_ratio(steep).points) {
        CHECK(std::abs(pt.R - 0.5) < 1.2 * 0.125 * h * h / 12.0);
    }
}

TEST_CASE("derivative_ratio rejects non-uniform grids and short series") {
    ScalingSeries s;
    for (double n : {10.0, 100.0, 1500.0}) {
        SeriesPoint pt;
        pt.n = n;
        pt.gap = 1.0 / n;
        s.points.push_back(pt);
    }
    CHECK_THROWS_AS(derivative_ratio(s), NonUniformGridError);
    s.points.pop_back();
    CHECK_THROWS_AS(derivative_ratio(s), DomainError);
}

TEST_CASE("derivative_ratio omits points with vanishing f'") {
    // constant gap: f' = 0 everywhere
    ScalingSeries s;
    const double h = std::log(10.0) / 8;
    for (double x = 0; x < 2.0; x += h) {
        SeriesPoint pt;
        pt.n = std::exp(x + 1.0);
        pt.gap = 0.5;
        s.points.push_back(pt);
    }
    const auto result = derivative_ratio(s);
    CHECK(result.points.empty());
    CHECK(result.omitted_n.size() == s.points.size() - 2);
}

TEST_CASE("translation covariance: scaling all gaps leaves p, q, C and R unchanged") {
    auto series = synthetic_exponential(2.0, 0.15, 0.3, 100.0, 1e5, 16);
    auto scaled = series;
    for (auto& pt : scaled.points) *pt.log_gap += std::log(7.5); // gap *= 7.5
    const auto f1 = exponential_fit(series);
    const auto f2 = exponential_fit(scaled);
    CHECK(*f1.q == doctest::Approx(*f2.q).epsilon(1e-9));
    CHECK(*f1.C == doctest::Approx(*f2.C).epsilon(1e-6));
    CHECK(*f2.B == doctest::Approx(*f1.B * 7.5).epsilon(1e-6));
    const auto r1 = derivative_ratio(series).points;
    const auto r2 = derivative_ratio(scaled).points;
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].R == doctest::Approx(r2[i].R).epsilon(1e-10));
    }

    auto power = synthetic_power(1.0, 0.4, 100.0, 1e5, 8);
    auto power_scaled = power;
    for (auto& pt : power_scaled.points) *pt.gap *= 3.0;
    CHECK(*power_fit(power).p == doctest::Approx(*power_fit(power_scaled).p).epsilon(1e-12));
}

TEST_CASE("grid refinement: halving h shrinks the R error like h^2") {
    const double q = 0.3;
    auto run = [&](int per_decade) {
        const auto expo = synthetic_exponential(1.0, 0.02, q, 1e3, 1e5, per_decade);
        const auto pts = derivative_ratio(expo).points;
        // compare at the shared central point n = 1e4
        double best = 1e9;
        for (const auto& pt : pts) {
            if (std::abs(std::log(pt.n) - std::log(1e4)) < 1e-6) best = std::abs(pt.R - q);
        }
        return best;
    };
    const double err_coarse = run(8);
    const double err_fine = run(16);
    CHECK(err_fine < err_coarse / 3.0); // O(h^2) expects ~4x
}

TEST_CASE("fit idempotence: refitting the model's own output reproduces parameters") {
    const auto pfit = power_fit(synthetic_power(4.2, 1.1, 50.0, 1e4, 8));
    const auto refit = power_fit(synthetic_power(*pfit.A, *pfit.p, 50.0, 1e4, 8));
    CHECK(*refit.A == doctest::Approx(*pfit.A).epsilon(1e-10));
    CHECK(*refit.p == doctest::Approx(*pfit.p).epsilon(1e-10));
}

TEST_CASE("threshold_n_ratio finds the analytic crossing of a synthetic ratio model") {
    // exact solvers: reference = pure power law, exact = reference * (1 - kappa eps^0.1)
    const double k = 0.713;
    GapFn reference = [](double n) {
        GapRecord rec;
        rec.n = n;
        rec.method = Method::asymptotic1;
        rec.gap = std::pow(n, -0.1);
        rec.log_gap = -0.1 * std::log(n);
        return rec;
    };
    GapFn exact = [&](double n) {
        GapRecord rec;
        rec.n = n;
        rec.method = Method::continuous;
        const double ratio = 1.0 - k * std::pow(2.0 / n, 0.1);
        rec.gap = std::pow(n, -0.1) * ratio;
        rec.log_gap = -0.1 * std::log(n) + std::log(ratio);
        return rec;
    };
    const double v = 0.9;
    const double analytic = 2.0 * std::pow(k / (1.0 - v), 10.0); // ~6.8e8
    const double found = threshold_n_ratio(0.3, v, exact, reference, 1e3, 1e12);
    CHECK(std::abs(std::log(found) - std::log(analytic)) < 2e-3);

    // v below ratio(n_lo) is a BracketError by contract
    CHECK_THROWS_AS(threshold_n_ratio(0.3, 0.05, exact, reference, 1e3, 1e12), BracketError);
    // thresholds increase with v
    const double found80 = threshold_n_ratio(0.3, 0.8, exact, reference, 1e3, 1e12);
    CHECK(found80 < found);
}

TEST_CASE("threshold_n_ratio rejects non-monotone ratios") {
    GapFn reference = [](double n) {
        GapRecord rec;
        rec.n = n;
        rec.gap = 1.0;
        rec.log_gap = 0.0;
        return rec;
    };
    GapFn bumpy = [](double n) {
        GapRecord rec;
        rec.n = n;
        const double x = std::log(n);
        const double r = 0.5 + 0.4 * std::tanh(x - 10.0) - 0.3 * std::exp(-(x - 8.0) * (x - 8.0));
        rec.gap = r;
        rec.log_gap = std::log(r);
        return rec;
    };
    CHECK_THROWS_AS(threshold_n_ratio(0.3, 0.8, bumpy, reference, 100.0, 1e9), NonMonotoneError);
}
