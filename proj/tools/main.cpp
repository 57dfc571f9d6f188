// qagap command-line tool: single gap queries, parameter sweeps, scaling fits,
// derivative-ratio diagnostics, threshold searches and figure-reproduction
// pipelines. Output is CSV (default) or JSON rows; reproduce writes dataset
// files plus a JSON manifest.
//
// Exit codes: 0 success, 2 usage, 3 solver error, 4 input data, 5 unsupported
// regime.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qagap/analysis.hpp"
#include "qagap/asymptotic.hpp"
#include "qagap/continuous.hpp"
#include "qagap/discrete.hpp"
#include "qagap/io.hpp"
#include "qagap/reproduce.hpp"
#include "qagap/sweep.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInput = 4;
constexpr int kExitRegime = 5;

struct OutputTarget {
    std::string path; // empty = stdout
    std::string format = "csv";

    void write(const std::string& content) const {
        if (path.empty()) {
            std::cout << content;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw qagap::InputError("cannot open output file: " + path);
        out << content;
    }
};

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> out;
    const auto range_pos = text.find("..");
    if (range_pos != std::string::npos) {
        // "lo..hi" or "lo..hi:step" (default step 0.01)
        const double lo = std::stod(text.substr(0, range_pos));
        std::string rest = text.substr(range_pos + 2);
        double step = 0.01;
        const auto colon = rest.find(':');
        if (colon != std::string::npos) {
            step = std::stod(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        const double hi = std::stod(rest);
        if (!(step > 0) || !(lo <= hi)) throw CLI::ValidationError("--alphas", "bad range");
        for (double a = lo; a <= hi + 1e-12; a += step) out.push_back(a);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("--alphas", "no values");
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::string rows_to_output(const std::vector<qagap::SweepRow>& rows, const std::string& format) {
    std::string out;
    if (format == "json") {
        out += "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out += "  " + qagap::to_json_row(rows[i]);
            if (i + 1 < rows.size()) out += ",";
            out += "\n";
        }
        out += "]\n";
    } else {
        out += qagap::gap_csv_header() + "\n";
        for (const auto& row : rows) out += qagap::to_csv_row(row) + "\n";
    }
    return out;
}

int map_error_exit(const qagap::Error& e, bool reproduce_context = false) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const qagap::InputError*>(&e) ||
        dynamic_cast<const qagap::NonUniformGridError*>(&e) ||
        dynamic_cast<const qagap::EmptyBinError*>(&e)) {
        return kExitInput;
    }
    if (reproduce_context && dynamic_cast<const qagap::RegimeError*>(&e)) {
        return kExitRegime;
    }
    return kExitSolver;
}

struct CommonFlags {
    double omega = 4.0 / 3.0;
    double c = 0;
    int digits = 30;
    int digits_cap = 4096;
    int threads = 0;

    double c_value() const { return (c > 0) ? c : qagap::paper_c(); }

    void attach(CLI::App* cmd) {
        cmd->add_option("--omega", omega, "well curvature constant (default 4/3)");
        cmd->add_option("--c", c, "energy scale constant (default 8/(3(sqrt(3)-1)))");
        cmd->add_option("--digits", digits, "working decimal digits (default 30)")
            ->check(CLI::Range(16, 1 << 20));
        cmd->add_option("--digits-cap", digits_cap, "adaptive precision ceiling (default 4096)");
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum spectral gap of the symmetric barrier-tunneling annealing problem"};
    app.require_subcommand(1);
    app.set_config("--config", "", "plain-text key=value config; command-line flags override");
    app.get_config_formatter_base()->comment('#');

    // ---- gap ----------------------------------------------------------
    auto* gap_cmd = app.add_subcommand("gap", "one (n, alpha, method) gap record");
    std::string gap_method = "continuous";
    double gap_n = 0, gap_alpha = 0.3;
    std::string gap_barrier = "square";
    double gap_height = 1.0, gap_width = 1.0;
    CommonFlags gap_common;
    OutputTarget gap_out;
    gap_cmd->add_option("--method", gap_method, "discrete|continuous|asymptotic1|asymptotic2")
        ->required();
    gap_cmd->add_option("--n", gap_n, "problem size")->required();
    gap_cmd->add_option("--alpha", gap_alpha, "barrier scaling power")->required();
    gap_cmd->add_option("--barrier", gap_barrier, "square|binomial (discrete)");
    gap_cmd->add_option("--height-coeff", gap_height, "barrier height coefficient");
    gap_cmd->add_option("--width-coeff", gap_width, "barrier width coefficient");
    gap_cmd->add_option("--output", gap_out.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    gap_cmd->add_option("--out", gap_out.path, "output file (default stdout)");
    gap_common.attach(gap_cmd);

    // ---- sweep ---------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "gap series over an n grid");
    std::string sweep_method = "continuous";
    std::string sweep_alphas = "0.3";
    double sweep_nmin = 0, sweep_nmax = 0;
    int sweep_ppd = 16;
    std::string sweep_policy;
    std::string sweep_barrier = "square";
    double sweep_height = 1.0, sweep_width = 1.0;
    int sweep_sgrid = 512;
    CommonFlags sweep_common;
    OutputTarget sweep_out;
    sweep_cmd->add_option("--method", sweep_method, "discrete|continuous|asymptotic1|asymptotic2")
        ->required();
    sweep_cmd->add_option("--alphas", sweep_alphas, "comma list or lo..hi[:step]")->required();
    sweep_cmd->add_option("--nmin", sweep_nmin, "smallest n")->required();
    sweep_cmd->add_option("--nmax", sweep_nmax, "largest n")->required();
    sweep_cmd->add_option("--points-per-decade", sweep_ppd, "grid density (default 16)");
    sweep_cmd->add_option("--n-policy", sweep_policy,
                          "exact_reals|round_to_integer|barrier_width_transitions");
    sweep_cmd->add_option("--barrier", sweep_barrier, "square|binomial (discrete)");
    sweep_cmd->add_option("--height-coeff", sweep_height, "barrier height coefficient");
    sweep_cmd->add_option("--width-coeff", sweep_width, "barrier width coefficient");
    sweep_cmd->add_option("--s-grid", sweep_sgrid, "s scan points for discrete (default 512)");
    sweep_cmd->add_option("--output", sweep_out.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", sweep_out.path, "output file (default stdout)");
    sweep_common.attach(sweep_cmd);

    // ---- fit ------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "power/exponential fits of a gap series file");
    std::string fit_input, fit_bins, fit_model = "power";
    OutputTarget fit_out;
    fit_cmd->add_option("input", fit_input, "series CSV (sweep output)")->required();
    fit_cmd->add_option("--bins", fit_bins, "lo:hi,lo:hi,... n bins (default: one bin)");
    fit_cmd->add_option("--model", fit_model, "power|exponential")
        ->check(CLI::IsMember({"power", "exponential"}));
    fit_cmd->add_option("--out", fit_out.path, "output file (default stdout)");

    // ---- ratio ----------------------------------------------------------
    auto* ratio_cmd = app.add_subcommand("ratio", "derivative ratio R = f''/f' of a series file");
    std::string ratio_input;
    bool ratio_target = false;
    OutputTarget ratio_out;
    ratio_cmd->add_option("input", ratio_input, "series CSV (sweep output)")->required();
    ratio_cmd->add_flag("--target", ratio_target, "append the asymptotic target constant column");
    ratio_cmd->add_option("--out", ratio_out.path, "output file (default stdout)");

    // ---- threshold ------------------------------------------------------
    auto* thr_cmd = app.add_subcommand("threshold", "n where continuous/asymptotic ratio reaches v");
    double thr_alpha = 0.3;
    std::string thr_v = "0.5";
    double thr_nmin = 0, thr_nmax = 1e12;
    CommonFlags thr_common;
    OutputTarget thr_out;
    thr_cmd->add_option("--alpha", thr_alpha, "barrier scaling power")->required();
    thr_cmd->add_option("--v", thr_v, "comma list of ratio thresholds in (0,1)")->required();
    thr_cmd->add_option("--nmin", thr_nmin, "bracket lower n (default: regime edge)");
    thr_cmd->add_option("--nmax", thr_nmax, "bracket upper n (default 1e12)");
    thr_cmd->add_option("--out", thr_out.path, "output file (default stdout)");
    thr_common.attach(thr_cmd);

    // ---- reproduce ------------------------------------------------------
    auto* rep_cmd = app.add_subcommand("reproduce", "write a study figure's dataset + manifest");
    std::string rep_figure;
    qagap::ReproduceOptions rep_opts;
    std::string rep_alphas, rep_vs;
    rep_cmd->add_option("FIGURE", rep_figure, "fig1..fig7");
    rep_cmd->add_option("--figure", rep_figure, "fig1..fig7 (same as the positional)");
    rep_cmd->add_option("--outdir", rep_opts.outdir, "output directory (default .)");
    rep_cmd->add_option("--nmin", rep_opts.n_min, "override figure's n lower bound");
    rep_cmd->add_option("--nmax", rep_opts.n_max, "override figure's n upper bound");
    rep_cmd->add_option("--alphas", rep_alphas, "comma list or lo..hi[:step]");
    rep_cmd->add_option("--alpha", rep_alphas, "single alpha (same as --alphas)");
    rep_cmd->add_option("--v", rep_vs, "threshold percentages for fig5");
    rep_cmd->add_option("--points-per-decade", rep_opts.points_per_decade, "grid density");
    rep_cmd->add_option("--discrete-cap", rep_opts.discrete_cap, "largest discrete n (fig3/fig4)");
    rep_cmd->add_option("--s-grid", rep_opts.s_grid, "s scan points for discrete series");
    rep_cmd->add_option("--omega", rep_opts.omega, "well curvature constant");
    rep_cmd->add_option("--c", rep_opts.c, "energy scale constant");
    rep_cmd->add_option("--digits", rep_opts.digits, "working decimal digits");
    rep_cmd->add_option("--digits-cap", rep_opts.digits_cap, "adaptive precision ceiling");
    rep_cmd->add_option("--threads", rep_opts.threads, "worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (gap_cmd->parsed()) {
            const qagap::Method method = qagap::method_from_string(gap_method);
            qagap::GapRecord rec;
            if (method == qagap::Method::discrete) {
                if (gap_n < 1 || gap_n != std::floor(gap_n)) {
                    std::cerr << "usage error: discrete method requires a positive integer --n\n";
                    return kExitUsage;
                }
                qagap::BarrierSpec spec;
                spec.shape = qagap::barrier_shape_from_string(gap_barrier);
                spec.alpha = gap_alpha;
                spec.height_coeff = gap_height;
                spec.width_coeff = gap_width;
                rec = qagap::min_gap_discrete(static_cast<std::int64_t>(gap_n), spec);
            } else if (method == qagap::Method::continuous) {
                qagap::ContinuousGapOptions opts;
                opts.digits_cap = gap_common.digits_cap;
                rec = qagap::continuous_gap(gap_n, gap_alpha, gap_common.omega,
                                            gap_common.c_value(),
                                            qagap::PrecisionPolicy(gap_common.digits), opts);
            } else if (method == qagap::Method::asymptotic1) {
                rec = qagap::gap_first_order(gap_n, gap_alpha, gap_common.omega,
                                             gap_common.c_value());
            } else {
                rec = qagap::gap_second_order(gap_n, gap_alpha, gap_common.omega,
                                              gap_common.c_value(),
                                              qagap::PrecisionPolicy(gap_common.digits));
            }
            gap_out.write(rows_to_output({qagap::SweepRow::from_record(rec)}, gap_out.format));
            return 0;
        }

        if (sweep_cmd->parsed()) {
            qagap::SweepPlan plan;
            plan.method = qagap::method_from_string(sweep_method);
            plan.alphas = parse_alpha_list(sweep_alphas);
            plan.n_min = sweep_nmin;
            plan.n_max = sweep_nmax;
            plan.points_per_decade = sweep_ppd;
            plan.omega = sweep_common.omega;
            plan.c = sweep_common.c;
            plan.precision_digits = sweep_common.digits;
            plan.precision_cap = sweep_common.digits_cap;
            plan.s_grid = sweep_sgrid;
            plan.threads = sweep_common.threads;
            plan.barrier.shape = qagap::barrier_shape_from_string(sweep_barrier);
            plan.barrier.height_coeff = sweep_height;
            plan.barrier.width_coeff = sweep_width;
            if (!sweep_policy.empty()) {
                plan.n_policy = qagap::integer_n_policy_from_string(sweep_policy);
            } else if (plan.method == qagap::Method::discrete) {
                plan.n_policy = qagap::IntegerNPolicy::round_to_integer;
            }
            const auto rows = qagap::run_sweep(plan);
            sweep_out.write(rows_to_output(rows, sweep_out.format));
            for (const auto& row : rows) {
                if (!row.error.empty()) return kExitSolver;
            }
            return 0;
        }

        if (fit_cmd->parsed()) {
            const auto rows = qagap::read_series_csv_file(fit_input);
            const auto groups = qagap::group_series(rows);
            if (groups.empty()) throw qagap::InputError("series file has no usable rows");
            std::vector<std::pair<double, double>> bins;
            if (!fit_bins.empty()) {
                std::stringstream ss(fit_bins);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    const auto colon = item.find(':');
                    if (colon == std::string::npos) {
                        throw qagap::InputError("--bins expects lo:hi pairs");
                    }
                    bins.emplace_back(std::stod(item.substr(0, colon)),
                                      std::stod(item.substr(colon + 1)));
                }
            }
            std::string out = "alpha,method,model,n_lo,n_hi,A,p,B,C,q,residual\n";
            for (const auto& [key, series] : groups) {
                auto emit = [&](const qagap::FitResult& fit) {
                    out += qagap::format_double(key.first);
                    out += ',';
                    out += qagap::method_name(key.second);
                    out += ',';
                    out += (fit.model == qagap::FitModel::power) ? "power" : "exponential";
                    out += ',';
                    out += qagap::format_double(fit.n_range.first);
                    out += ',';
                    out += qagap::format_double(fit.n_range.second);
                    out += ',';
                    out += fit.A ? qagap::format_double(*fit.A) : std::string();
                    out += ',';
                    out += fit.p ? qagap::format_double(*fit.p) : std::string();
                    out += ',';
                    out += fit.B ? qagap::format_double(*fit.B) : std::string();
                    out += ',';
                    out += fit.C ? qagap::format_double(*fit.C) : std::string();
                    out += ',';
                    out += fit.q ? qagap::format_double(*fit.q) : std::string();
                    out += ',';
                    out += qagap::format_double(fit.residual);
                    out += '\n';
                };
                if (fit_model == "exponential") {
                    emit(qagap::exponential_fit(series));
                } else if (bins.empty()) {
                    emit(qagap::power_fit(series));
                } else {
                    for (const auto& fit : qagap::binned_power_fits(series, bins)) emit(fit);
                }
            }
            fit_out.write(out);
            return 0;
        }

        if (ratio_cmd->parsed()) {
            const auto rows = qagap::read_series_csv_file(ratio_input);
            const auto groups = qagap::group_series(rows);
            if (groups.empty()) throw qagap::InputError("series file has no usable rows");
            std::string out = ratio_target ? "alpha,method,n,R,target\n" : "alpha,method,n,R\n";
            for (const auto& [key, series] : groups) {
                const auto result = qagap::derivative_ratio(series);
                std::optional<double> target;
                if (ratio_target) {
                    const qagap::Region region = qagap::classify_region(key.first);
                    target = (region == qagap::Region::exponential)
                                  ? (3.0 * key.first - 1.0) / 2.0
                                  : 0.0;
                }
                for (const auto& pt : result.points) {
                    out += qagap::format_double(key.first);
                    out += ',';
                    out += qagap::method_name(key.second);
                    out += ',';
                    out += qagap::format_double(pt.n);
                    out += ',';
                    out += qagap::format_double(pt.R);
                    if (target) {
                        out += ',';
                        out += qagap::format_double(*target);
                    }
                    out += '\n';
                }
                for (double n : result.omitted_n) {
                    std::cerr << "note: omitted n = " << n << " (|f'| below threshold)\n";
                }
            }
            ratio_out.write(out);
            return 0;
        }

        if (thr_cmd->parsed()) {
            const auto vs = parse_double_list(thr_v);
            if (vs.empty()) {
                std::cerr << "usage error: --v needs at least one value\n";
                return kExitUsage;
            }
            const qagap::PrecisionPolicy prec(thr_common.digits);
            const double c = thr_common.c_value();
            std::string out = "alpha,v,n_threshold,n_estimate\n";
            for (double v : vs) {
                const double n_lo = (thr_nmin > 0)
                                        ? thr_nmin
                                        : 2.0 * std::pow(4.0, 1.0 / thr_alpha) * 1.05;
                qagap::GapFn cont = [&](double n) {
                    qagap::ContinuousGapOptions opts;
                    opts.digits_cap = thr_common.digits_cap;
                    return qagap::continuous_gap(n, thr_alpha, thr_common.omega, c, prec, opts);
                };
                qagap::GapFn asym = [&](double n) {
                    return qagap::gap_first_order(n, thr_alpha, thr_common.omega, c);
                };
                const double n_star =
                    qagap::threshold_n_ratio(thr_alpha, v, cont, asym, n_lo, thr_nmax);
                const double n_est =
                    qagap::n_threshold_estimate(v, thr_alpha, thr_common.omega, prec);
                out += qagap::format_double(thr_alpha) + ',' + qagap::format_double(v) + ',' +
                       qagap::format_double(n_star) + ',' + qagap::format_double(n_est) + '\n';
            }
            thr_out.write(out);
            return 0;
        }

        if (rep_cmd->parsed()) {
            if (rep_figure.empty()) {
                std::cerr << "usage error: reproduce needs a figure (fig1..fig7)\n";
                return kExitUsage;
            }
            rep_opts.figure = rep_figure;
            if (!rep_alphas.empty()) rep_opts.alphas = parse_alpha_list(rep_alphas);
            if (!rep_vs.empty()) rep_opts.v_list = parse_double_list(rep_vs);
            for (int i = 1; i < argc; ++i) rep_opts.cli_flags.emplace_back(argv[i]);
            try {
                const auto result = qagap::reproduce_figure(rep_opts);
                for (const auto& file : result.files) std::cout << file << "\n";
                return 0;
            } catch (const qagap::Error& e) {
                return map_error_exit(e, /*reproduce_context=*/true);
            }
        }
    } catch (const qagap::Error& e) {
        return map_error_exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }

    return 0;
}
