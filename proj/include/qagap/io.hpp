#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qagap/analysis.hpp"
#include "qagap/gap_record.hpp"

namespace qagap {

// Shortest round-trip decimal form of a double (locale-independent).
std::string format_double(double v);

// Fixed gap-record CSV header: n,alpha,method,gap,log_gap,s_star,digits_used,error
std::string gap_csv_header();

// One emitted sweep/gap row; `error` non-empty marks a failed cell (the row
// stays well-formed CSV).
struct SweepRow {
    double n = 0;
    double alpha = 0;
    Method method = Method::discrete;
    std::optional<double> gap;
    std::optional<double> log_gap;
    std::optional<double> s_star;
    std::optional<int> digits_used;
    std::string error;

    static SweepRow from_record(const GapRecord& rec);
};

std::string to_csv_row(const SweepRow& row);
std::string to_json_row(const SweepRow& row); // single JSON object, stable key order

// Parses a CSV stream in the gap-record format. Throws InputError on a
// malformed header or row.
std::vector<SweepRow> read_series_csv(std::istream& in);
std::vector<SweepRow> read_series_csv_file(const std::string& path);

// Groups successful rows into per-(alpha, method) series, points sorted by n;
// rows with a non-empty error column are skipped.
std::map<std::pair<double, Method>, ScalingSeries> group_series(const std::vector<SweepRow>& rows);

} // namespace qagap
