#include "qagap/sweep.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "qagap/asymptotic.hpp"
#include "qagap/continuous.hpp"
#include "qagap/precision.hpp"

namespace qagap {

IntegerNPolicy integer_n_policy_from_string(std::string_view s) {
    if (s == "exact_reals") return IntegerNPolicy::exact_reals;
    if (s == "round_to_integer") return IntegerNPolicy::round_to_integer;
    if (s == "barrier_width_transitions") return IntegerNPolicy::barrier_width_transitions;
    throw DomainError("unknown integer-n policy: " + std::string(s));
}

void SweepPlan::validate() const {
    if (!(n_min > 0) || !(n_min < n_max)) {
        throw DomainError("SweepPlan: need 0 < n_min < n_max");
    }
    if (points_per_decade < 1) throw DomainError("SweepPlan: points_per_decade must be positive");
    if (alphas.empty()) throw DomainError("SweepPlan: no alphas given");
    if (method == Method::discrete) {
        if (n_policy == IntegerNPolicy::exact_reals) {
            throw DomainError("SweepPlan: discrete sweeps need an integer-n policy");
        }
        if (n_max > discrete_n_cap) {
            throw DomainError("SweepPlan: discrete n_max exceeds the configured cap");
        }
    }
}

std::vector<double> plan_n_values(const SweepPlan& plan, double alpha) {
    if (plan.n_policy == IntegerNPolicy::barrier_width_transitions) {
        BarrierSpec spec = plan.barrier;
        spec.alpha = alpha;
        std::vector<double> out;
        for (std::int64_t n : barrier_width_transitions(plan.n_min, plan.n_max, spec)) {
            out.push_back(static_cast<double>(n));
        }
        return out;
    }

    // Uniform in log10(n): n_k = 10^(log10(n_min) + k / points_per_decade).
    const double x0 = std::log10(plan.n_min);
    const double x1 = std::log10(plan.n_max);
    const auto count =
        static_cast<int>(std::floor((x1 - x0) * plan.points_per_decade + 1.0 + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    double prev_rounded = 0;
    for (int k = 0; k < count; ++k) {
        double n = std::pow(10.0, x0 + static_cast<double>(k) / plan.points_per_decade);
        if (plan.n_policy == IntegerNPolicy::round_to_integer) {
            n = std::max(1.0, std::round(n));
            if (n == prev_rounded) continue;
            prev_rounded = n;
        }
        out.push_back(n);
    }
    return out;
}

namespace {

SweepRow run_cell(const SweepPlan& plan, double alpha, double n) {
    SweepRow row;
    row.n = n;
    row.alpha = alpha;
    row.method = plan.method;
    const double c = (plan.c > 0) ? plan.c : paper_c();
    try {
        GapRecord rec;
        switch (plan.method) {
        case Method::discrete: {
            BarrierSpec spec = plan.barrier;
            spec.alpha = alpha;
            rec = min_gap_discrete(static_cast<std::int64_t>(std::llround(n)), spec, plan.s_grid,
                                   plan.rel_tol);
            break;
        }
        case Method::continuous: {
            ContinuousGapOptions opts;
            opts.digits_cap = plan.precision_cap;
            rec = continuous_gap(n, alpha, plan.omega, c, PrecisionPolicy(plan.precision_digits),
                                 opts);
            break;
        }
        case Method::asymptotic1:
            rec = gap_first_order(n, alpha, plan.omega, c);
            break;
        case Method::asymptotic2:
            rec = gap_second_order(n, alpha, plan.omega, c, PrecisionPolicy(plan.precision_digits));
            break;
        }
        row = SweepRow::from_record(rec);
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepPlan& plan) {
    plan.validate();

    struct Cell {
        double alpha;
        double n;
    };
    std::vector<Cell> cells;
    for (double alpha : plan.alphas) {
        for (double n : plan_n_values(plan, alpha)) {
            cells.push_back({alpha, n});
        }
    }

    std::vector<SweepRow> rows(cells.size());
    unsigned workers = plan.threads > 0 ? static_cast<unsigned>(plan.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, cells.size() == 0 ? 1 : static_cast<unsigned>(cells.size()));

    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            rows[i] = run_cell(plan, cells[i].alpha, cells[i].n);
        }
        return rows;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            rows[i] = run_cell(plan, cells[i].alpha, cells[i].n);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return rows;
}

} // namespace qagap
