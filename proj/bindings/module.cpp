#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qagap/analysis.hpp"
#include "qagap/asymptotic.hpp"
#include "qagap/continuous.hpp"
#include "qagap/discrete.hpp"
#include "qagap/io.hpp"
#include "qagap/reproduce.hpp"
#include "qagap/specfun.hpp"
#include "qagap/sweep.hpp"

namespace py = pybind11;
using namespace qagap;

namespace {

PrecisionPolicy make_policy(int digits) { return PrecisionPolicy(digits); }

BarrierSpec make_barrier(const std::string& shape, double alpha, double height_coeff,
                         double width_coeff, double center_fraction) {
    BarrierSpec spec;
    spec.shape = barrier_shape_from_string(shape);
    spec.alpha = alpha;
    spec.height_coeff = height_coeff;
    spec.width_coeff = width_coeff;
    spec.center_fraction = center_fraction;
    spec.validate();
    return spec;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "minimum spectral gap of the symmetric barrier-tunneling annealing problem";

    py::register_exception<Error>(m, "QagapError");

    py::enum_<Method>(m, "Method")
        .value("discrete", Method::discrete)
        .value("continuous", Method::continuous)
        .value("asymptotic1", Method::asymptotic1)
        .value("asymptotic2", Method::asymptotic2);

    py::enum_<Region>(m, "Region")
        .value("constant", Region::constant)
        .value("polynomial", Region::polynomial)
        .value("exponential", Region::exponential);

    py::class_<GapRecord>(m, "GapRecord")
        .def_readonly("n", &GapRecord::n)
        .def_readonly("alpha", &GapRecord::alpha)
        .def_readonly("method", &GapRecord::method)
        .def_readonly("gap", &GapRecord::gap)
        .def_readonly("log_gap", &GapRecord::log_gap)
        .def_readonly("s_star", &GapRecord::s_star)
        .def_readonly("digits_used", &GapRecord::digits_used)
        .def("__repr__", [](const GapRecord& r) {
            return "GapRecord(n=" + format_double(r.n) + ", alpha=" + format_double(r.alpha) +
                   ", method=" + std::string(method_name(r.method)) +
                   ", gap=" + format_double(r.gap) + ")";
        });

    py::class_<BarrierSpec>(m, "BarrierSpec")
        .def(py::init(&make_barrier), py::arg("shape") = "square", py::arg("alpha") = 0.3,
             py::arg("height_coeff") = 1.0, py::arg("width_coeff") = 1.0,
             py::arg("center_fraction") = 0.25)
        .def_readonly("alpha", &BarrierSpec::alpha)
        .def_readonly("height_coeff", &BarrierSpec::height_coeff)
        .def_readonly("width_coeff", &BarrierSpec::width_coeff)
        .def_readonly("center_fraction", &BarrierSpec::center_fraction);

    py::class_<TridiagonalMatrix>(m, "TridiagonalMatrix")
        .def_readonly("diag", &TridiagonalMatrix::diag)
        .def_readonly("offdiag", &TridiagonalMatrix::offdiag);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("A", &FitResult::A)
        .def_readonly("p", &FitResult::p)
        .def_readonly("B", &FitResult::B)
        .def_readonly("C", &FitResult::C)
        .def_readonly("q", &FitResult::q)
        .def_readonly("residual", &FitResult::residual)
        .def_readonly("n_range", &FitResult::n_range);

    py::class_<RatioPoint>(m, "RatioPoint")
        .def_readonly("n", &RatioPoint::n)
        .def_readonly("R", &RatioPoint::R);

    // Special functions (double precision in/out; digits set the working precision).
    m.def(
        "kummer_m",
        [](double a, double b, double z, int digits) {
            const auto prec = make_policy(digits);
            return to_double(kummer_m(make_real(a, digits), make_real(b, digits),
                                      make_real(z, digits), prec));
        },
        py::arg("a"), py::arg("b"), py::arg("z"), py::arg("digits") = 30);
    m.def(
        "pcf_d",
        [](double nu, double z, int digits) {
            const auto prec = make_policy(digits);
            return to_double(pcf_d(make_real(nu, digits), make_real(z, digits), prec));
        },
        py::arg("nu"), py::arg("z"), py::arg("digits") = 30);
    m.def(
        "pcf_d_prime",
        [](double nu, double z, int digits) {
            const auto prec = make_policy(digits);
            return to_double(pcf_d_prime(make_real(nu, digits), make_real(z, digits), prec));
        },
        py::arg("nu"), py::arg("z"), py::arg("digits") = 30);
    m.def(
        "digamma",
        [](double x, int digits) {
            const auto prec = make_policy(digits);
            return to_double(digamma(make_real(x, digits), prec));
        },
        py::arg("x"), py::arg("digits") = 30);

    // Discrete analysis.
    m.def("barrier_value", &barrier_value, py::arg("w"), py::arg("n"), py::arg("spec"));
    m.def("build_hamiltonian", &build_hamiltonian, py::arg("n"), py::arg("s"), py::arg("spec"));
    m.def("lowest_two_eigenvalues", &lowest_two_eigenvalues, py::arg("matrix"),
          py::arg("rel_tol") = 1e-13);
    m.def("gap_at_s", &gap_at_s, py::arg("n"), py::arg("s"), py::arg("spec"),
          py::arg("rel_tol") = 1e-13, py::call_guard<py::gil_scoped_release>());
    m.def(
        "min_gap_discrete",
        [](std::int64_t n, const BarrierSpec& spec, int s_grid, double rel_tol) {
            return min_gap_discrete(n, spec, s_grid, rel_tol);
        },
        py::arg("n"), py::arg("spec"), py::arg("s_grid") = 512, py::arg("rel_tol") = 1e-13,
        py::call_guard<py::gil_scoped_release>());

    // Continuous analysis.
    m.def(
        "continuous_gap",
        [](double n, double alpha, double omega, double c, int digits, int digits_cap,
           double width_scale, double height_scale) {
            ContinuousGapOptions opts;
            opts.digits_cap = digits_cap;
            opts.width_scale = width_scale;
            opts.height_scale = height_scale;
            return continuous_gap(n, alpha, omega, c > 0 ? c : paper_c(), make_policy(digits),
                                  opts);
        },
        py::arg("n"), py::arg("alpha"), py::arg("omega") = kDefaultOmega, py::arg("c") = 0.0,
        py::arg("digits") = 30, py::arg("digits_cap") = 4096, py::arg("width_scale") = 1.0,
        py::arg("height_scale") = 1.0, py::call_guard<py::gil_scoped_release>());

    // Asymptotic analysis.
    m.def("classify_region", &classify_region, py::arg("alpha"));
    m.def("gap_first_order", &gap_first_order, py::arg("n"), py::arg("alpha"),
          py::arg("omega") = kDefaultOmega, py::arg("c") = paper_c());
    m.def(
        "gap_second_order",
        [](double n, double alpha, double omega, double c, int digits) {
            return gap_second_order(n, alpha, omega, c > 0 ? c : paper_c(), make_policy(digits));
        },
        py::arg("n"), py::arg("alpha"), py::arg("omega") = kDefaultOmega, py::arg("c") = 0.0,
        py::arg("digits") = 30);
    m.def(
        "kappa", [](double omega, int digits) { return kappa(omega, make_policy(digits)); },
        py::arg("omega") = kDefaultOmega, py::arg("digits") = 30);
    m.def(
        "n_threshold_estimate",
        [](double v, double alpha, double omega, int digits) {
            return n_threshold_estimate(v, alpha, omega, make_policy(digits));
        },
        py::arg("v"), py::arg("alpha"), py::arg("omega") = kDefaultOmega, py::arg("digits") = 30);
    m.def("paper_c", &paper_c);

    // Scaling analysis over (n, gap) series given as parallel lists.
    auto build_series = [](const std::vector<double>& ns, const std::vector<double>& fs,
                           bool f_is_log, double alpha, Method method) {
        if (ns.size() != fs.size()) throw DomainError("series lists must have equal length");
        ScalingSeries series;
        series.alpha = alpha;
        series.method = method;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            SeriesPoint pt;
            pt.n = ns[i];
            if (f_is_log) {
                pt.log_gap = fs[i];
            } else {
                pt.gap = fs[i];
            }
            series.points.push_back(pt);
        }
        return series;
    };
    m.def(
        "power_fit",
        [build_series](const std::vector<double>& ns, const std::vector<double>& gaps,
                       bool log_values, double alpha, Method method) {
            return power_fit(build_series(ns, gaps, log_values, alpha, method));
        },
        py::arg("n"), py::arg("gap"), py::arg("log_values") = false, py::arg("alpha") = 0.3,
        py::arg("method") = Method::continuous);
    m.def(
        "exponential_fit",
        [build_series](const std::vector<double>& ns, const std::vector<double>& gaps,
                       bool log_values, double alpha, Method method) {
            return exponential_fit(build_series(ns, gaps, log_values, alpha, method));
        },
        py::arg("n"), py::arg("gap"), py::arg("log_values") = false, py::arg("alpha") = 0.3,
        py::arg("method") = Method::continuous);
    m.def(
        "derivative_ratio",
        [build_series](const std::vector<double>& ns, const std::vector<double>& gaps,
                       bool log_values, double alpha, Method method) {
            return derivative_ratio(build_series(ns, gaps, log_values, alpha, method)).points;
        },
        py::arg("n"), py::arg("gap"), py::arg("log_values") = false, py::arg("alpha") = 0.3,
        py::arg("method") = Method::continuous);
    m.def(
        "threshold_n_ratio",
        [](double alpha, double v, const std::function<GapRecord(double)>& gap_exact,
           const std::function<GapRecord(double)>& gap_reference, double n_lo, double n_hi) {
            return threshold_n_ratio(alpha, v, gap_exact, gap_reference, n_lo, n_hi);
        },
        py::arg("alpha"), py::arg("v"), py::arg("gap_exact"), py::arg("gap_reference"),
        py::arg("n_lo"), py::arg("n_hi"));

    m.attr("__version__") = "0.1.0";
}
