#include "qagap/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qagap/analysis.hpp"
#include "qagap/asymptotic.hpp"
#include "qagap/continuous.hpp"

namespace qagap {

namespace {

using nlohmann::json;

// Smallest n in the continuous solver's tunneling regime at this alpha
// (barrier top above 4*omega in cE units).
double min_regime_n(double alpha) {
    return 2.0 * std::pow(4.0, 1.0 / alpha);
}

struct FigureDefaults {
    double n_min, n_max;
    std::vector<double> alphas;
};

FigureDefaults figure_defaults(const std::string& figure) {
    if (figure == "fig1") return {100, 3000, {0.26, 0.28, 0.30, 0.32}};
    if (figure == "fig2") return {1000, 1e6, {0.26, 0.28, 0.30, 0.32}};
    if (figure == "fig3") return {300, 1e6, {0.30}};
    if (figure == "fig4") return {300, 1e13, {0.30}};
    if (figure == "fig5") return {0, 1e50, {0.27, 0.29, 0.31}};
    if (figure == "fig6") return {1000, 1e7, {0.38, 0.45}};
    if (figure == "fig7") return {1000, 1e7, {0.26, 0.28, 0.30, 0.32, 0.34}};
    throw DomainError("unknown figure: " + figure + " (expected fig1..fig7)");
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + path);
    out << content;
}

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = gap_csv_header() + "\n";
    for (const auto& row : rows) out += to_csv_row(row) + "\n";
    return out;
}

// Decade bin edges covering [n_min, n_max].
std::vector<std::pair<double, double>> decade_bins(double n_min, double n_max) {
    std::vector<std::pair<double, double>> bins;
    double lo = n_min;
    for (double edge = std::pow(10.0, std::floor(std::log10(n_min)) + 1.0); edge < n_max;
         edge *= 10.0) {
        if (edge <= lo) continue;
        bins.emplace_back(lo, edge);
        lo = edge;
    }
    bins.emplace_back(lo, n_max);
    return bins;
}

std::string fits_csv(const std::vector<SweepRow>& rows) {
    std::string out = "alpha,method,n_lo,n_hi,A,p,residual,p_asymptotic\n";
    for (const auto& [key, series] : group_series(rows)) {
        if (series.points.size() < 2) continue;
        const auto bins = decade_bins(series.points.front().n, series.points.back().n);
        std::vector<std::pair<double, double>> usable;
        for (const auto& bin : bins) {
            int count = 0;
            for (const auto& pt : series.points) {
                if (pt.n >= bin.first && pt.n <= bin.second) ++count;
            }
            if (count >= 2) usable.push_back(bin);
        }
        if (usable.empty()) continue;
        const auto fits = binned_power_fits(series, usable);
        for (const auto& fit : fits) {
            out += format_double(key.first);
            out += ',';
            out += method_name(key.second);
            out += ',';
            out += format_double(fit.n_range.first);
            out += ',';
            out += format_double(fit.n_range.second);
            out += ',';
            out += format_double(*fit.A);
            out += ',';
            out += format_double(*fit.p);
            out += ',';
            out += format_double(fit.residual);
            out += ',';
            out += format_double(2.0 * key.first - 0.5);
            out += '\n';
        }
    }
    return out;
}

std::string ratio_csv(const std::vector<SweepRow>& rows) {
    std::string out = "alpha,method,n,R,target\n";
    for (const auto& [key, series] : group_series(rows)) {
        if (series.points.size() < 3) continue;
        const auto result = derivative_ratio(series);
        const Region region = classify_region(key.first);
        const double target = (region == Region::exponential) ? (3.0 * key.first - 1.0) / 2.0 : 0.0;
        for (const auto& pt : result.points) {
            out += format_double(key.first);
            out += ',';
            out += method_name(key.second);
            out += ',';
            out += format_double(pt.n);
            out += ',';
            out += format_double(pt.R);
            out += ',';
            out += format_double(target);
            out += '\n';
        }
    }
    return out;
}

SweepPlan base_plan(const ReproduceOptions& opts, Method method, double n_min, double n_max,
                    const std::vector<double>& alphas) {
    SweepPlan plan;
    plan.n_min = n_min;
    plan.n_max = n_max;
    plan.points_per_decade = opts.points_per_decade;
    plan.alphas = alphas;
    plan.method = method;
    plan.omega = opts.omega;
    plan.c = opts.c;
    plan.precision_digits = opts.digits;
    plan.precision_cap = opts.digits_cap;
    plan.s_grid = opts.s_grid;
    plan.threads = opts.threads;
    return plan;
}

// A required series must produce at least one successful row.
void require_success(const std::vector<SweepRow>& rows, const std::string& what) {
    for (const auto& row : rows) {
        if (row.error.empty()) return;
    }
    std::string reason = rows.empty() ? "no cells in range" : rows.front().error;
    throw RegimeError("reproduce: " + what + " produced no usable rows (" + reason + ")");
}

json manifest_skeleton(const ReproduceOptions& opts, double n_min, double n_max,
                       const std::vector<double>& alphas) {
    json defaults;
    defaults["figure"] = opts.figure;
    defaults["n_min"] = n_min;
    defaults["n_max"] = n_max;
    defaults["alphas"] = alphas;
    defaults["v_list"] = opts.v_list.empty() ? std::vector<double>{0.5, 0.8} : opts.v_list;
    defaults["points_per_decade"] = opts.points_per_decade;
    defaults["digits"] = opts.digits;
    defaults["digits_cap"] = opts.digits_cap;
    defaults["omega"] = opts.omega;
    defaults["c"] = (opts.c > 0) ? opts.c : paper_c();
    defaults["discrete_cap"] = opts.discrete_cap;
    defaults["s_grid"] = opts.s_grid;

    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));

    json m;
    m["command"] = "reproduce " + opts.figure;
    m["flags"] = opts.cli_flags;
    m["defaults"] = defaults;
    m["versions"] = {{"qagap", "0.1.0"}, {"dataset_format", 1}};
    m["timestamp"] = stamp;
    return m;
}

ReproduceResult finish(const ReproduceOptions& opts, const json& manifest,
                       std::vector<std::pair<std::string, std::string>> files) {
    std::filesystem::create_directories(opts.outdir);
    ReproduceResult result;
    for (const auto& [name, content] : files) {
        const std::string path = join_path(opts.outdir, name);
        write_text_file(path, content);
        result.files.push_back(path);
    }
    const std::string mpath = join_path(opts.outdir, opts.figure + "_manifest.json");
    write_text_file(mpath, manifest.dump(2) + "\n");
    result.files.push_back(mpath);
    return result;
}

ReproduceResult reproduce_binned_fits(const ReproduceOptions& opts, Method method,
                                      const FigureDefaults& def) {
    const double n_min = opts.n_min > 0 ? opts.n_min : def.n_min;
    const double n_max = opts.n_max > 0 ? opts.n_max : def.n_max;
    const auto& alphas = opts.alphas.empty() ? def.alphas : opts.alphas;

    SweepPlan plan = base_plan(opts, method, n_min, n_max, alphas);
    if (method == Method::discrete) {
        plan.barrier.shape = BarrierShape::binomial;
        plan.n_policy = IntegerNPolicy::barrier_width_transitions;
        plan.discrete_n_cap = std::max(plan.discrete_n_cap, n_max);
    }
    const auto rows = run_sweep(plan);
    require_success(rows, opts.figure + " gap sweep");

    json manifest = manifest_skeleton(opts, n_min, n_max, alphas);
    manifest["defaults"]["method"] = std::string(method_name(method));
    return finish(opts, manifest,
                  {{opts.figure + "_gaps.csv", rows_to_csv(rows)},
                   {opts.figure + "_fits.csv", fits_csv(rows)}});
}

ReproduceResult reproduce_gap_comparison(const ReproduceOptions& opts, bool second_order,
                                         const FigureDefaults& def) {
    const double n_min = opts.n_min > 0 ? opts.n_min : def.n_min;
    const double n_max = opts.n_max > 0 ? opts.n_max : def.n_max;
    const auto& alphas = opts.alphas.empty() ? def.alphas : opts.alphas;

    std::vector<SweepRow> all;

    // Discrete series, truncated at its cap; square barrier as in the study.
    SweepPlan discrete_plan =
        base_plan(opts, Method::discrete, n_min, std::min(n_max, opts.discrete_cap), alphas);
    discrete_plan.barrier.shape = BarrierShape::square;
    discrete_plan.n_policy = IntegerNPolicy::barrier_width_transitions;
    if (discrete_plan.n_min < discrete_plan.n_max) {
        const auto rows = run_sweep(discrete_plan);
        all.insert(all.end(), rows.begin(), rows.end());
    }

    const std::vector<Method> methods =
        second_order ? std::vector<Method>{Method::continuous, Method::asymptotic1, Method::asymptotic2}
                     : std::vector<Method>{Method::continuous, Method::asymptotic1};
    for (Method method : methods) {
        SweepPlan plan = base_plan(opts, method, n_min, n_max, alphas);
        const auto rows = run_sweep(plan);
        require_success(rows, std::string(method_name(method)) + " series");
        all.insert(all.end(), rows.begin(), rows.end());
    }

    json manifest = manifest_skeleton(opts, n_min, n_max, alphas);
    manifest["defaults"]["second_order"] = second_order;
    return finish(opts, manifest, {{opts.figure + "_gaps.csv", rows_to_csv(all)}});
}

ReproduceResult reproduce_thresholds(const ReproduceOptions& opts, const FigureDefaults& def) {
    const double n_max = opts.n_max > 0 ? opts.n_max : def.n_max;
    const auto& alphas = opts.alphas.empty() ? def.alphas : opts.alphas;
    const std::vector<double> vs = opts.v_list.empty() ? std::vector<double>{0.5, 0.8} : opts.v_list;
    const double c = (opts.c > 0) ? opts.c : paper_c();
    const PrecisionPolicy prec(opts.digits);

    std::string csv = "alpha,v,n_threshold,n_estimate,error\n";
    for (double alpha : alphas) {
        for (double v : vs) {
            csv += format_double(alpha);
            csv += ',';
            csv += format_double(v);
            csv += ',';
            std::string threshold, estimate, error;
            try {
                estimate = format_double(n_threshold_estimate(v, alpha, opts.omega, prec));
                const double n_lo =
                    (opts.n_min > 0) ? opts.n_min : min_regime_n(alpha) * 1.05;
                GapFn cont = [&](double n) {
                    ContinuousGapOptions copts;
                    copts.digits_cap = opts.digits_cap;
                    return continuous_gap(n, alpha, opts.omega, c, prec, copts);
                };
                GapFn asym = [&](double n) { return gap_first_order(n, alpha, opts.omega, c); };
                threshold = format_double(threshold_n_ratio(alpha, v, cont, asym, n_lo, n_max));
            } catch (const Error& e) {
                error = e.what();
            }
            csv += threshold + ',' + estimate + ',' + error + '\n';
        }
    }

    json manifest = manifest_skeleton(opts, opts.n_min, n_max, alphas);
    manifest["defaults"]["v_list"] = vs;
    return finish(opts, manifest, {{opts.figure + "_thresholds.csv", csv}});
}

ReproduceResult reproduce_ratio_diagnostic(const ReproduceOptions& opts,
                                           const FigureDefaults& def) {
    const double n_min = opts.n_min > 0 ? opts.n_min : def.n_min;
    const double n_max = opts.n_max > 0 ? opts.n_max : def.n_max;
    const auto& alphas = opts.alphas.empty() ? def.alphas : opts.alphas;

    SweepPlan plan = base_plan(opts, Method::continuous, n_min, n_max, alphas);
    const auto rows = run_sweep(plan);
    require_success(rows, opts.figure + " continuous sweep");

    json manifest = manifest_skeleton(opts, n_min, n_max, alphas);
    return finish(opts, manifest,
                  {{opts.figure + "_gaps.csv", rows_to_csv(rows)},
                   {opts.figure + "_ratio.csv", ratio_csv(rows)}});
}

} // namespace

ReproduceResult reproduce_figure(const ReproduceOptions& opts) {
    const FigureDefaults def = figure_defaults(opts.figure);
    if (opts.figure == "fig1") return reproduce_binned_fits(opts, Method::discrete, def);
    if (opts.figure == "fig2") return reproduce_binned_fits(opts, Method::continuous, def);
    if (opts.figure == "fig3") return reproduce_gap_comparison(opts, false, def);
    if (opts.figure == "fig4") return reproduce_gap_comparison(opts, true, def);
    if (opts.figure == "fig5") return reproduce_thresholds(opts, def);
    return reproduce_ratio_diagnostic(opts, def);
}

} // namespace qagap
