#pragma once

#include <string>
#include <vector>

#include "qagap/sweep.hpp"

namespace qagap {

// Scale-bounded dataset reproduction for the seven study figures. Datasets
// are CSV files plus a JSON manifest carrying every parameter needed to
// re-derive them; plots themselves are out of scope.
struct ReproduceOptions {
    std::string figure;          // fig1 .. fig7
    std::string outdir = ".";
    double n_min = 0;            // 0 = figure default
    double n_max = 0;            // 0 = figure default
    std::vector<double> alphas;  // empty = figure default
    std::vector<double> v_list;  // fig5 thresholds; empty = default {0.5, 0.8}
    int points_per_decade = 16;
    int digits = 30;
    int digits_cap = 4096;
    double omega = 4.0 / 3.0;
    double c = 0;                // 0 = paper default
    double discrete_cap = 3000;  // largest n for discrete series in fig3/fig4
    int s_grid = 512;
    int threads = 0;
    std::vector<std::string> cli_flags; // verbatim user flags, recorded in the manifest
};

struct ReproduceResult {
    std::vector<std::string> files; // paths written, CSVs first, manifest last
};

ReproduceResult reproduce_figure(const ReproduceOptions& opts);

} // namespace qagap
