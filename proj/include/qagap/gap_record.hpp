#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qagap/errors.hpp"

namespace qagap {

// The three gap-analysis routes (asymptotic split into first/second order).
enum class Method { discrete, continuous, asymptotic1, asymptotic2 };

inline std::string_view method_name(Method m) {
    switch (m) {
    case Method::discrete: return "discrete";
    case Method::continuous: return "continuous";
    case Method::asymptotic1: return "asymptotic1";
    case Method::asymptotic2: return "asymptotic2";
    }
    return "unknown";
}

inline Method method_from_string(std::string_view s) {
    if (s == "discrete") return Method::discrete;
    if (s == "continuous") return Method::continuous;
    if (s == "asymptotic1") return Method::asymptotic1;
    if (s == "asymptotic2") return Method::asymptotic2;
    throw DomainError("unknown method: " + std::string(s));
}

// One (n, alpha, method) -> minimum-gap result.
//
// gap is in the energy units of H. In the exponential scaling region the gap
// underflows double well before the solvers give up; in that case gap is 0 and
// log_gap carries ln(g). Consumers must prefer log_gap when set.
struct GapRecord {
    double n = 0;
    double alpha = 0;
    Method method = Method::discrete;
    double gap = 0;
    std::optional<double> log_gap;    // ln(gap)
    std::optional<double> s_star;     // discrete only: argmin over s
    std::optional<int> digits_used;   // continuous only: converged precision
};

} // namespace qagap
