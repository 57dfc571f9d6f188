#pragma once

#include <string>
#include <vector>

#include "qagap/discrete.hpp"
#include "qagap/io.hpp"

namespace qagap {

// How sweep grid points map to problem sizes. Discrete sweeps need integers;
// barrier_width_transitions picks exactly the n where the discrete barrier
// width has just grown (denser, cleaner discrete data sets).
enum class IntegerNPolicy { exact_reals, round_to_integer, barrier_width_transitions };

inline std::string_view integer_n_policy_name(IntegerNPolicy p) {
    switch (p) {
    case IntegerNPolicy::exact_reals: return "exact_reals";
    case IntegerNPolicy::round_to_integer: return "round_to_integer";
    case IntegerNPolicy::barrier_width_transitions: return "barrier_width_transitions";
    }
    return "unknown";
}

IntegerNPolicy integer_n_policy_from_string(std::string_view s);

struct SweepPlan {
    double n_min = 0;
    double n_max = 0;
    int points_per_decade = 16;
    std::vector<double> alphas;
    Method method = Method::continuous;
    BarrierSpec barrier;     // discrete only (alpha overridden per sweep alpha)
    double omega = 4.0 / 3.0;
    double c = 0;            // 0 = paper default
    int precision_digits = 30;
    int precision_cap = 4096;
    IntegerNPolicy n_policy = IntegerNPolicy::exact_reals;
    int s_grid = 512;
    double rel_tol = 1e-13;
    double discrete_n_cap = 2e6;
    int threads = 0;         // 0 = hardware concurrency

    void validate() const;
};

// The n grid for one alpha under the plan's integer-n policy. exact_reals
// grids are uniform in ln n, anchored at n_min with points_per_decade steps
// per decade of n.
std::vector<double> plan_n_values(const SweepPlan& plan, double alpha);

// Runs every (alpha, n) cell; cells fan out to a worker pool and results are
// merged by key, so the row order (alpha, then n) is independent of
// scheduling. Failed cells carry their reason in the error column.
std::vector<SweepRow> run_sweep(const SweepPlan& plan);

} // namespace qagap
