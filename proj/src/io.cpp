#include "qagap/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qagap {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string gap_csv_header() {
    return "n,alpha,method,gap,log_gap,s_star,digits_used,error";
}

SweepRow SweepRow::from_record(const GapRecord& rec) {
    SweepRow row;
    row.n = rec.n;
    row.alpha = rec.alpha;
    row.method = rec.method;
    row.gap = rec.gap;
    row.log_gap = rec.log_gap;
    row.s_star = rec.s_star;
    row.digits_used = rec.digits_used;
    return row;
}

namespace {

std::string opt_field(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

// Error text embedded in a CSV cell: commas and newlines swapped out.
std::string sanitize(const std::string& s) {
    std::string out = s;
    std::replace(out.begin(), out.end(), ',', ';');
    std::replace(out.begin(), out.end(), '\n', ' ');
    return out;
}

} // namespace

std::string to_csv_row(const SweepRow& row) {
    std::string out;
    out += format_double(row.n);
    out += ',';
    out += format_double(row.alpha);
    out += ',';
    out += method_name(row.method);
    out += ',';
    out += opt_field(row.gap);
    out += ',';
    out += opt_field(row.log_gap);
    out += ',';
    out += opt_field(row.s_star);
    out += ',';
    out += row.digits_used ? std::to_string(*row.digits_used) : std::string();
    out += ',';
    out += sanitize(row.error);
    return out;
}

std::string to_json_row(const SweepRow& row) {
    std::string out = "{\"n\":" + format_double(row.n) + ",\"alpha\":" + format_double(row.alpha) +
                      ",\"method\":\"" + std::string(method_name(row.method)) + "\"";
    if (row.gap) out += ",\"gap\":" + format_double(*row.gap);
    if (row.log_gap) out += ",\"log_gap\":" + format_double(*row.log_gap);
    if (row.s_star) out += ",\"s_star\":" + format_double(*row.s_star);
    if (row.digits_used) out += ",\"digits_used\":" + std::to_string(*row.digits_used);
    if (!row.error.empty()) out += ",\"error\":\"" + sanitize(row.error) + "\"";
    out += "}";
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InputError(std::string("malformed numeric field for ") + what + ": '" + s + "'");
    }
}

} // namespace

std::vector<SweepRow> read_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("empty series file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != gap_csv_header()) {
        throw InputError("unexpected series header: '" + line + "'");
    }
    std::vector<SweepRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 8) {
            throw InputError("line " + std::to_string(lineno) + ": expected 8 fields, got " +
                             std::to_string(fields.size()));
        }
        SweepRow row;
        row.n = parse_double(fields[0], "n");
        row.alpha = parse_double(fields[1], "alpha");
        row.method = method_from_string(fields[2]);
        if (!fields[3].empty()) row.gap = parse_double(fields[3], "gap");
        if (!fields[4].empty()) row.log_gap = parse_double(fields[4], "log_gap");
        if (!fields[5].empty()) row.s_star = parse_double(fields[5], "s_star");
        if (!fields[6].empty()) row.digits_used = static_cast<int>(parse_double(fields[6], "digits_used"));
        row.error = fields[7];
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> read_series_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open series file: " + path);
    return read_series_csv(in);
}

std::map<std::pair<double, Method>, ScalingSeries> group_series(const std::vector<SweepRow>& rows) {
    std::map<std::pair<double, Method>, ScalingSeries> out;
    for (const SweepRow& row : rows) {
        if (!row.error.empty()) continue;
        auto& series = out[{row.alpha, row.method}];
        series.alpha = row.alpha;
        series.method = row.method;
        SeriesPoint pt;
        pt.n = row.n;
        if (row.gap && *row.gap > 0) pt.gap = row.gap;
        if (row.log_gap) pt.log_gap = row.log_gap;
        series.points.push_back(pt);
    }
    for (auto& [key, series] : out) {
        std::sort(series.points.begin(), series.points.end(),
                  [](const SeriesPoint& a, const SeriesPoint& b) { return a.n < b.n; });
    }
    return out;
}

} // namespace qagap
