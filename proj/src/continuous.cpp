#include "qagap/continuous.hpp"

#include <cmath>

#include "qagap/specfun.hpp"

namespace qagap {

double paper_c() {
    return 8.0 / (3.0 * (std::sqrt(3.0) - 1.0));
}

Real paper_c_real(int digits) {
    return 8 / (3 * (sqrt(make_real(3, digits)) - 1));
}

ContinuousModel ContinuousModel::make(double n, double alpha, double omega, double c, int digits,
                                      double width_scale, double height_scale) {
    if (!(n > 0)) throw DomainError("ContinuousModel: n must be positive");
    if (!(alpha > 0.25 && alpha < 0.5)) {
        throw RegimeError("ContinuousModel: alpha must lie strictly inside (1/4, 1/2)");
    }
    if (!(omega > 0) || !(c > 0)) throw DomainError("ContinuousModel: omega and c must be positive");
    if (width_scale < 0 || height_scale < 0) {
        throw DomainError("ContinuousModel: barrier scales must be non-negative");
    }

    ContinuousModel m;
    m.n = n;
    m.alpha = alpha;
    m.omega = omega;
    m.c = c;
    m.digits = digits;
    m.width_scale = width_scale;
    m.height_scale = height_scale;

    PrecisionGuard guard(digits);
    m.n_r = make_real(n, digits);
    m.epsilon = 2 / m.n_r;
    m.omega_r = make_real(omega, digits);
    m.c_r = make_real(c, digits);
    const Real eps_pow = pow(m.epsilon, 1 - make_real(alpha, digits));
    m.a = make_real(width_scale, digits) * eps_pow / 2;
    m.barrier_height = make_real(height_scale, digits) * m.omega_r * eps_pow;
    m.sqrt_2w_eps = sqrt(2 * m.omega_r / m.epsilon);
    m.z0 = m.sqrt_2w_eps * m.a;
    return m;
}

MatchingContext MatchingContext::make(const ContinuousModel& model, Parity parity,
                                      const Real& energy) {
    const int d = model.digits;
    MatchingContext ctx;
    ctx.parity = parity;
    ctx.energy = reseat(energy, d);
    ctx.nu = model.c_r * ctx.energy / (2 * model.omega_r) - make_real(1, d) / 2;
    // k^2 = omega_b eps^(-1-alpha) - cE/eps, with omega_b eps^(1-alpha) the barrier height.
    const Real k_sq =
        model.barrier_height / (model.epsilon * model.epsilon) - model.c_r * ctx.energy / model.epsilon;
    if (!(k_sq > 0)) {
        throw RegimeError("MatchingContext: energy at or above the barrier top (k^2 <= 0)");
    }
    ctx.k = sqrt(k_sq);
    return ctx;
}

Real matching_function(const ContinuousModel& model, Parity parity, const Real& energy,
                       const PrecisionPolicy& prec) {
    const int d = prec.digits;
    PrecisionGuard guard(d);
    const MatchingContext ctx = MatchingContext::make(model, parity, energy);

    const Real dv = pcf_d(ctx.nu, model.z0, prec);
    const Real dvp = pcf_d_prime(ctx.nu, model.z0, prec);
    const Real ka = ctx.k * model.a;

    const int sign = (parity == Parity::even) ? -1 : 1;
    // Even: F = k D (e^ka - e^-ka) - S D' (e^ka + e^-ka); odd swaps the combinations.
    const Real overflow_edge = make_real(prec.digits, d) * log(make_real(10, d));
    if (ka > overflow_edge) {
        const Real em2 = exp(-2 * ka); // common e^(ka) divided out; same roots
        return ctx.k * dv * (1 + sign * em2) - model.sqrt_2w_eps * dvp * (1 - sign * em2);
    }
    const Real ep = exp(ka);
    const Real em = exp(-ka);
    return ctx.k * dv * (ep + sign * em) - model.sqrt_2w_eps * dvp * (ep - sign * em);
}

namespace {

constexpr int kScanPoints = 4096;

int sign_of(const Real& v) {
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

// Barrier top in cE units: height_scale * omega * eps^(-alpha).
Real barrier_top_ce(const ContinuousModel& model) {
    const int d = model.digits;
    return make_real(model.height_scale, d) * model.omega_r *
           pow(model.epsilon, -make_real(model.alpha, d));
}

// Smallest root in cE units above scan_from (or the default lower edge).
Real solve_parity_ce(const ContinuousModel& model, Parity parity, const PrecisionPolicy& prec,
                     const Real* scan_from) {
    const int d = prec.digits;
    const Real omega = model.omega_r;

    if (model.has_barrier() && !(barrier_top_ce(model) > 4 * omega)) {
        throw RegimeError("solve_parity_energy: barrier top below 4*omega; outside tunneling regime");
    }

    Real scan_hi = 8 * omega;
    if (model.has_barrier()) {
        // Stay strictly below the barrier top so k remains real.
        const Real top = barrier_top_ce(model);
        if (top < scan_hi) scan_hi = top * (1 - make_real(1e-9, d));
    }
    Real scan_lo = scan_from ? *scan_from : make_real(1e-6, d) * omega;
    if (!(scan_lo < scan_hi)) {
        throw NoRootError("solve_parity_energy: empty scan interval");
    }

    auto eval = [&](const Real& ce) { return matching_function(model, parity, ce / model.c_r, prec); };

    const Real step = (scan_hi - scan_lo) / kScanPoints;
    Real prev_ce = scan_lo;
    int prev_sign = sign_of(eval(prev_ce));
    Real lo(0, static_cast<unsigned>(d)), hi(0, static_cast<unsigned>(d));
    int sign_lo = 0;
    bool found = false;
    for (int j = 1; j <= kScanPoints; ++j) {
        const Real ce = scan_lo + j * step;
        const Real f = eval(ce);
        const int s = sign_of(f);
        if (s == 0) return ce;
        if (prev_sign != 0 && s != prev_sign) {
            lo = prev_ce;
            hi = ce;
            sign_lo = prev_sign;
            found = true;
            break;
        }
        prev_ce = ce;
        prev_sign = s;
    }
    if (!found) {
        throw NoRootError("solve_parity_energy: no sign change in scan window");
    }

    // Bisect to relative width 10^-(digits-8).
    const Real tol = pow10(-(d - 8), d);
    while ((hi - lo) > tol * hi) {
        const Real mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break; // representable-width floor
        const int s = sign_of(eval(mid));
        if (s == 0) return mid;
        if (s == sign_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

// Both eigenenergies with the even root solved once.
std::pair<Real, Real> solve_energy_pair(const ContinuousModel& model, const PrecisionPolicy& prec) {
    const Real even_ce = solve_parity_ce(model, Parity::even, prec, nullptr);
    const Real odd_ce = solve_parity_ce(model, Parity::odd, prec, &even_ce);
    return {even_ce / model.c_r, odd_ce / model.c_r};
}

} // namespace

Real solve_parity_energy(const ContinuousModel& model, Parity parity, const PrecisionPolicy& prec) {
    PrecisionGuard guard(prec.digits);
    if (parity == Parity::even) {
        return solve_parity_ce(model, Parity::even, prec, nullptr) / model.c_r;
    }
    const Real even_ce = solve_parity_ce(model, Parity::even, prec, nullptr);
    return solve_parity_ce(model, Parity::odd, prec, &even_ce) / model.c_r;
}

GapRecord continuous_gap(double n, double alpha, double omega, double c,
                         const PrecisionPolicy& prec, const ContinuousGapOptions& opts) {
    // Exponential-region starting digits: the parity splitting is
    // ~e^(-sqrt(omega) eps^((1-3a)/2)); the E_odd - E_even subtraction must
    // survive that cancellation.
    int start_digits = prec.digits;
    if (alpha > 1.0 / 3.0) {
        const double log_eps = std::log(2.0 / n);
        const double ka_scale = std::sqrt(omega) * std::exp(0.5 * (1.0 - 3.0 * alpha) * log_eps);
        const double needed = 20.0 + std::ceil(ka_scale * 0.4342944819032518);
        if (std::isfinite(needed) && needed > start_digits) {
            start_digits = static_cast<int>(needed);
        }
    }
    if (start_digits > opts.digits_cap) {
        throw PrecisionCeilingError("continuous_gap: required starting digits exceed the cap");
    }

    auto gap_at_digits = [&](int digits) {
        const ContinuousModel model =
            ContinuousModel::make(n, alpha, omega, c, digits, opts.width_scale, opts.height_scale);
        const PrecisionPolicy local = prec.with_digits(digits);
        const auto [e_even, e_odd] = solve_energy_pair(model, local);
        Real gap = e_odd - e_even;
        if (!(gap > 0)) {
            throw Error("continuous_gap: parity ordering violated (E_odd <= E_even)");
        }
        return gap;
    };

    int digits = start_digits;
    Real gap = gap_at_digits(digits);
    while (true) {
        const int next = digits * 2;
        if (next > opts.digits_cap) {
            throw PrecisionCeilingError("continuous_gap: precision cap reached before convergence");
        }
        const Real refined = gap_at_digits(next);
        const Real change = abs(refined - gap) / abs(refined);
        gap = refined;
        digits = next;
        if (change < make_real(1e-6, 32)) break;
    }

    GapRecord rec;
    rec.n = n;
    rec.alpha = alpha;
    rec.method = Method::continuous;
    rec.gap = to_double(gap);
    rec.log_gap = to_double(log(gap));
    rec.digits_used = digits;
    return rec;
}

} // namespace qagap
