#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qagap/io.hpp"
#include "qagap/reproduce.hpp"
#include "qagap/sweep.hpp"

using namespace qagap;

namespace {

SweepPlan asymptotic_plan() {
    SweepPlan plan;
    plan.method = Method::asymptotic1;
    plan.alphas = {0.3};
    plan.n_min = 100.0;
    plan.n_max = 1000.0;
    plan.points_per_decade = 16;
    return plan;
}

std::string csv_of(const std::vector<SweepRow>& rows) {
    std::string out = gap_csv_header() + "\n";
    for (const auto& row : rows) out += to_csv_row(row) + "\n";
    return out;
}

} // namespace

TEST_CASE("grid arithmetic: one decade at 16 points per decade gives 17 rows") {
    const auto plan = asymptotic_plan();
    CHECK(plan_n_values(plan, 0.3).size() == 17);
    const auto rows = run_sweep(plan);
    CHECK(rows.size() == 17);
    CHECK(rows.front().n == doctest::Approx(100.0));
    CHECK(rows.back().n == doctest::Approx(1000.0).epsilon(1e-12));
    // uniform in ln n
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const double h1 = std::log(rows[i].n) - std::log(rows[i - 1].n);
        const double h0 = std::log(rows[1].n) - std::log(rows[0].n);
        CHECK(h1 == doctest::Approx(h0).epsilon(1e-9));
    }
}

TEST_CASE("sweep reruns are byte-identical") {
    const auto plan = asymptotic_plan();
    CHECK(csv_of(run_sweep(plan)) == csv_of(run_sweep(plan)));
}

TEST_CASE("sweep output is deterministic across worker counts") {
    SweepPlan plan = asymptotic_plan();
    plan.alphas = {0.28, 0.3, 0.32};
    plan.threads = 1;
    const auto serial = csv_of(run_sweep(plan));
    plan.threads = 4;
    CHECK(csv_of(run_sweep(plan)) == serial);
}

TEST_CASE("rows are ordered by alpha then n") {
    SweepPlan plan = asymptotic_plan();
    plan.alphas = {0.32, 0.28};
    const auto rows = run_sweep(plan);
    // plan order is preserved per alpha grouping
    REQUIRE(rows.size() == 34);
    CHECK(rows[0].alpha == 0.32);
    CHECK(rows[17].alpha == 0.28);
    for (std::size_t i = 1; i < 17; ++i) CHECK(rows[i].n > rows[i - 1].n);
}

TEST_CASE("partial failures become error rows, not exceptions") {
    SweepPlan plan = asymptotic_plan();
    plan.method = Method::continuous;
    plan.alphas = {0.3};
    plan.n_min = 50.0;  // below the tunneling-regime edge (~203)
    plan.n_max = 500.0;
    plan.precision_digits = 20;
    const auto rows = run_sweep(plan);
    bool some_failed = false, some_passed = false;
    for (const auto& row : rows) {
        if (row.error.empty()) {
            some_passed = true;
            CHECK(row.gap.has_value());
        } else {
            some_failed = true;
            CHECK(!row.gap.has_value());
        }
    }
    CHECK(some_failed);
    CHECK(some_passed);
    // error rows still parse as CSV with 8 fields
    const std::string csv = csv_of(rows);
    std::istringstream in(csv);
    CHECK_NOTHROW(read_series_csv(in));
}

TEST_CASE("plan validation") {
    SweepPlan plan = asymptotic_plan();
    plan.n_min = 1000.0;
    plan.n_max = 100.0;
    CHECK_THROWS_AS(run_sweep(plan), DomainError);
    plan = asymptotic_plan();
    plan.method = Method::discrete;
    plan.n_policy = IntegerNPolicy::exact_reals;
    CHECK_THROWS_AS(run_sweep(plan), DomainError);
    plan.n_policy = IntegerNPolicy::round_to_integer;
    plan.n_max = 1e7; // beyond the discrete cap
    CHECK_THROWS_AS(run_sweep(plan), DomainError);
}

TEST_CASE("round_to_integer deduplicates repeated small n") {
    SweepPlan plan = asymptotic_plan();
    plan.method = Method::discrete;
    plan.n_policy = IntegerNPolicy::round_to_integer;
    plan.n_min = 4;
    plan.n_max = 16;
    plan.points_per_decade = 32;
    const auto ns = plan_n_values(plan, 0.3);
    for (std::size_t i = 1; i < ns.size(); ++i) {
        CHECK(ns[i] > ns[i - 1]);
        CHECK(ns[i] == std::round(ns[i]));
    }
}

TEST_CASE("barrier_width_transitions drive the transition policy") {
    SweepPlan plan = asymptotic_plan();
    plan.method = Method::discrete;
    plan.n_policy = IntegerNPolicy::barrier_width_transitions;
    plan.barrier.shape = BarrierShape::binomial;
    plan.n_min = 100;
    plan.n_max = 2000;
    const auto ns = plan_n_values(plan, 0.3);
    BarrierSpec spec = plan.barrier;
    spec.alpha = 0.3;
    const auto want = barrier_width_transitions(100, 2000, spec);
    REQUIRE(ns.size() == want.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        CHECK(ns[i] == static_cast<double>(want[i]));
    }
}

TEST_CASE("csv round trip preserves rows") {
    SweepPlan plan = asymptotic_plan();
    const auto rows = run_sweep(plan);
    const std::string csv = csv_of(rows);
    std::istringstream in(csv);
    const auto parsed = read_series_csv(in);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].n == rows[i].n);
        CHECK(parsed[i].alpha == rows[i].alpha);
        CHECK(parsed[i].method == rows[i].method);
        CHECK(*parsed[i].gap == *rows[i].gap);
        CHECK(*parsed[i].log_gap == *rows[i].log_gap);
    }
}

TEST_CASE("read_series_csv rejects malformed input") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_series_csv(empty), InputError);
    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS_AS(read_series_csv(bad_header), InputError);
    std::istringstream bad_row(gap_csv_header() + "\n1,2,continuous\n");
    CHECK_THROWS_AS(read_series_csv(bad_row), InputError);
    std::istringstream bad_num(gap_csv_header() + "\nxyz,0.3,continuous,1,0,,,\n");
    CHECK_THROWS_AS(read_series_csv(bad_num), InputError);
}

TEST_CASE("group_series splits by alpha and method and sorts by n") {
    std::vector<SweepRow> rows;
    for (double n : {100.0, 10.0}) {
        SweepRow row;
        row.n = n;
        row.alpha = 0.3;
        row.method = Method::continuous;
        row.gap = 1.0 / n;
        row.log_gap = -std::log(n);
        rows.push_back(row);
    }
    SweepRow failed;
    failed.n = 50;
    failed.alpha = 0.3;
    failed.method = Method::continuous;
    failed.error = "solver failed";
    rows.push_back(failed);
    SweepRow other;
    other.n = 10;
    other.alpha = 0.4;
    other.method = Method::asymptotic1;
    other.gap = 0.5;
    rows.push_back(other);

    const auto groups = group_series(rows);
    CHECK(groups.size() == 2);
    const auto& cont = groups.at({0.3, Method::continuous});
    REQUIRE(cont.points.size() == 2); // error row skipped
    CHECK(cont.points[0].n == 10.0);
    CHECK(cont.points[1].n == 100.0);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1e-300, 123456.789, 2.0 / 3.0, 1e25}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("reproduce fig4 at reduced scale writes deterministic CSV plus manifest") {
    namespace fs = std::filesystem;
    const fs::path dir1 = fs::temp_directory_path() / "qagap_fig4_a";
    const fs::path dir2 = fs::temp_directory_path() / "qagap_fig4_b";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    ReproduceOptions opts;
    opts.figure = "fig4";
    opts.n_min = 1e3;
    opts.n_max = 1e6;
    opts.points_per_decade = 4;
    opts.discrete_cap = 400;
    opts.s_grid = 64;
    opts.outdir = dir1.string();
    const auto res1 = reproduce_figure(opts);
    opts.outdir = dir2.string();
    const auto res2 = reproduce_figure(opts);

    REQUIRE(res1.files.size() == res2.files.size());
    bool compared_csv = false;
    for (std::size_t i = 0; i < res1.files.size(); ++i) {
        if (res1.files[i].find(".csv") == std::string::npos) continue;
        std::ifstream a(res1.files[i]), b(res2.files[i]);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
        CHECK(!sa.str().empty());
        compared_csv = true;
    }
    CHECK(compared_csv);

    // manifest re-run: defaults block contains everything needed to re-derive
    std::ifstream mf(res1.files.back());
    std::stringstream ms;
    ms << mf.rdbuf();
    const std::string manifest = ms.str();
    CHECK(manifest.find("\"command\"") != std::string::npos);
    CHECK(manifest.find("\"defaults\"") != std::string::npos);
    CHECK(manifest.find("\"versions\"") != std::string::npos);
    CHECK(manifest.find("\"timestamp\"") != std::string::npos);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}
