#include <doctest.h>

#include <cmath>

#include "qagap/analysis.hpp"
#include "qagap/asymptotic.hpp"
#include "qagap/continuous.hpp"
#include "qagap/real.hpp"

using namespace qagap;

namespace {
constexpr double kOmega = 4.0 / 3.0;
}

TEST_CASE("classify_region") {
    CHECK(classify_region(0.30) == Region::polynomial);
    CHECK(classify_region(0.45) == Region::exponential);
    CHECK(classify_region(0.2) == Region::constant);
    CHECK_THROWS_AS(classify_region(0.25), BoundaryError);
    CHECK_THROWS_AS(classify_region(1.0 / 3.0), BoundaryError);
    CHECK_THROWS_AS(classify_region(0.0), DomainError);
    CHECK_THROWS_AS(classify_region(0.6), DomainError);
}

TEST_CASE("gap_first_order polynomial prefactor at eps = 1") {
    const auto rec = gap_first_order(2.0, 0.3, kOmega, paper_c());
    const double want = 8.0 * std::sqrt(kOmega) / (paper_c() * std::sqrt(M_PI));
    CHECK(rec.gap == doctest::Approx(want).epsilon(1e-14));
    CHECK(rec.gap == doctest::Approx(1.4307).epsilon(1e-4));
    CHECK(rec.method == Method::asymptotic1);
}

TEST_CASE("gap_first_order is a pure power law in the polynomial region") {
    // p = 2*alpha - 1/2 = 0.1 at alpha = 0.3: scaling n by 2^10 halves the gap.
    const double g1 = gap_first_order(1e4, 0.3, kOmega, paper_c()).gap;
    const double g2 = gap_first_order(1e4 * 1024.0, 0.3, kOmega, paper_c()).gap;
    CHECK(g2 / g1 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gap_first_order exponential region matches a high-precision log evaluation") {
    const double n = 1e25, alpha = 0.45;
    const auto rec = gap_first_order(n, alpha, kOmega, paper_c());
    REQUIRE(rec.log_gap.has_value());
    CHECK(rec.gap == 0.0); // underflows double

    const int d = 60;
    const Real eps = 2 / make_real(n, d);
    const Real omega_r = make_real(kOmega, d);
    const Real log_want = log(16 * omega_r / (paper_c_real(d) * sqrt(const_pi(d)))) +
                          make_real(alpha, d) / 2 * log(eps) -
                          sqrt(omega_r) * pow(eps, (1 - 3 * make_real(alpha, d)) / 2);
    CHECK(std::abs(*rec.log_gap - to_double(log_want)) < 1e-10 * std::abs(to_double(log_want)));
}

TEST_CASE("gap_first_order rejects the constant region and boundaries") {
    CHECK_THROWS_AS(gap_first_order(100, 0.2, kOmega, paper_c()), RegimeError);
    CHECK_THROWS_AS(gap_first_order(100, 0.25, kOmega, paper_c()), BoundaryError);
}

TEST_CASE("second-order ratio identity") {
    const PrecisionPolicy prec(30);
    const double k = kappa(kOmega, prec);
    for (double alpha : {0.26, 0.28, 0.30, 0.32}) {
        for (double n : {1e2, 1e4, 1e6, 1e8}) {
            const double g1 = gap_first_order(n, alpha, kOmega, paper_c()).gap;
            const double g2 = gap_second_order(n, alpha, kOmega, paper_c(), prec).gap;
            const double want = 1.0 - k * std::pow(2.0 / n, 2.0 * alpha - 0.5);
            CHECK(std::abs(g2 / g1 - want) < 1e-12);
            CHECK(g2 < g1);
        }
    }
}

TEST_CASE("gap_second_order rejects small n where the correction dominates") {
    // correction/leading = kappa * eps^0.1 >= 1 once eps > (1/kappa)^10, i.e. n < ~0.07
    CHECK_THROWS_AS(gap_second_order(0.05, 0.3, kOmega, paper_c(), PrecisionPolicy(30)),
                    NegativeGapError);
    CHECK_THROWS_AS(gap_second_order(1e4, 0.45, kOmega, paper_c(), PrecisionPolicy(30)),
                    RegimeError);
}

TEST_CASE("kappa paper values") {
    const PrecisionPolicy prec(30);
    CHECK(kappa(4.0 / 3.0, prec) > 0.7125);
    CHECK(kappa(4.0 / 3.0, prec) < 0.7135);
    CHECK(kappa(1.0, prec) > 0.8228);
    CHECK(kappa(1.0, prec) < 0.8238);
    // omega^(-1/2) scaling
    CHECK(kappa(4.0 * 0.7, prec) / kappa(0.7, prec) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("asymptotic_constants bundles kappa with the region") {
    const auto c = asymptotic_constants(0.3, kOmega, paper_c(), PrecisionPolicy(30));
    CHECK(c.region == Region::polynomial);
    CHECK(c.kappa == doctest::Approx(0.713).epsilon(1e-3));
    // second_order_coeff = (16/(c pi)) (ln2 + psi0(-1/2)); cross-check via kappa
    const double want = c.kappa * std::sqrt(M_PI * kOmega) / 2.0 * 16.0 / (paper_c() * M_PI);
    CHECK(c.second_order_coeff == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("n_threshold_estimate") {
    const PrecisionPolicy prec(30);
    // v = 0.9, alpha = 0.3: 2 (kappa/0.1)^10 ~ 6.8e8
    const double n90 = n_threshold_estimate(0.9, 0.3, kOmega, prec);
    CHECK(n90 == doctest::Approx(6.8e8).epsilon(0.05));
    // unit base: v = 1 - kappa gives n = 2
    const double v_unit = 1.0 - kappa(kOmega, prec);
    CHECK(n_threshold_estimate(v_unit, 0.3, kOmega, prec) == doctest::Approx(2.0).epsilon(1e-10));
    // monotone in v
    CHECK(n_threshold_estimate(0.95, 0.3, kOmega, prec) >
          n_threshold_estimate(0.9, 0.3, kOmega, prec));
    CHECK_THROWS_AS(n_threshold_estimate(1.5, 0.3, kOmega, prec), DomainError);
    CHECK_THROWS_AS(n_threshold_estimate(0.5, 0.45, kOmega, prec), RegimeError);
}

TEST_CASE("power_fit on asymptotic1 recovers the exact power law") {
    ScalingSeries series;
    series.alpha = 0.3;
    series.method = Method::asymptotic1;
    for (double x = 2.0; x <= 6.0 + 1e-9; x += 0.25) {
        const double n = std::pow(10.0, x);
        SeriesPoint pt;
        pt.n = n;
        pt.log_gap = gap_first_order(n, 0.3, kOmega, paper_c()).log_gap;
        series.points.push_back(pt);
    }
    const auto fit = power_fit(series);
    CHECK(*fit.p == doctest::Approx(0.1).epsilon(1e-10));
    const double want_A =
        8.0 * std::sqrt(kOmega) / (paper_c() * std::sqrt(M_PI)) * std::pow(2.0, 0.1);
    CHECK(*fit.A == doctest::Approx(want_A).epsilon(1e-10));
    CHECK(fit.residual < 1e-12);
}

TEST_CASE("derivative_ratio on exponential-region asymptotic1 approaches (3a-1)/2") {
    ScalingSeries series;
    series.alpha = 0.45;
    series.method = Method::asymptotic1;
    const double h = std::log(10.0) / 16.0;
    for (int k = -2; k <= 2; ++k) {
        const double n = std::exp(std::log(1e30) + k * h);
        SeriesPoint pt;
        pt.n = n;
        pt.log_gap = gap_first_order(n, 0.45, kOmega, paper_c()).log_gap;
        series.points.push_back(pt);
    }
    const auto result = derivative_ratio(series);
    REQUIRE(!result.points.empty());
    for (const auto& pt : result.points) {
        CHECK(std::abs(pt.R - 0.175) < 1e-3); // q = (3*0.45 - 1)/2
    }
}
