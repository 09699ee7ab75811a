#include "mirrorlab/modes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mirrorlab/root_find.hpp"

namespace mirrorlab::modes {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2OverPi = std::sqrt(2.0 / kPi);

void check(const ModeParams& p) {
    if (!std::isfinite(p.k) || p.k <= 0.0)
        throw std::domain_error("ModeParams: k must be finite and > 0");
    if (!std::isfinite(p.chi0) || p.chi0 < 0.0)
        throw std::domain_error("ModeParams: chi0 must be finite and >= 0");
}

double denom(double kq, double xi) {
    const double s = std::sin(kq);
    return 1.0 + xi * xi * s * s - xi * std::sin(2.0 * kq);
}

// tan(2kq) = 2/xi written bracket-friendly; same critical-point equation as
// the radiation-pressure force.
double extremum_eq(double kq, double xi) { return xi * std::sin(2.0 * kq) - 2.0 * std::cos(2.0 * kq); }
double extremum_eq_deriv(double kq, double xi) { return 2.0 * xi * std::cos(2.0 * kq) + 4.0 * std::sin(2.0 * kq); }

// Extremizer of L in kq units: index j = 0,1,2,... alternates max (even) and
// min (odd); the j-th root lies in (j*pi/2, j*pi/2 + pi/4).
double extremizer_kq(int j, double xi) {
    const double lo = 0.5 * j * kPi;
    const double hi = lo + 0.25 * kPi;
    return find_root_newton([xi](double y) { return extremum_eq(y, xi); },
                            [xi](double y) { return extremum_eq_deriv(y, xi); },
                            lo, hi, 1e-15, 1e-14);
}

}  // namespace

DeltaTrig delta_trig(double kq, double xi) {
    const double r = std::sqrt(denom(kq, xi));
    DeltaTrig out;
    out.sin_delta = std::sin(kq) / r;
    out.cos_delta = (std::cos(kq) - xi * std::sin(kq)) / r;
    return out;
}

double delta_principal(double kq, double xi) {
    const DeltaTrig t = delta_trig(kq, xi);
    return std::atan2(t.sin_delta, t.cos_delta);
}

double ModeEvaluation::profile_inside(double x) const { return L * std::sin(k * x); }

double ModeEvaluation::profile_outside(double x) const {
    return kSqrt2OverPi * std::sin(k * (x - q) + delta);
}

double ModeEvaluation::profile(double x) const {
    return x <= q ? profile_inside(x) : profile_outside(x);
}

ModeEvaluation eval_mode(double q, const ModeParams& p) {
    check(p);
    if (!std::isfinite(q)) throw std::domain_error("eval_mode: q must be finite");
    if (q <= 0.0) throw std::invalid_argument("eval_mode: q must be > 0");
    const double xi = p.xi();
    const double kq = p.k * q;

    ModeEvaluation out;
    out.k = p.k;
    out.q = q;
    out.L = kSqrt2OverPi / std::sqrt(denom(kq, xi));
    const DeltaTrig t = delta_trig(kq, xi);
    out.sin_delta = t.sin_delta;
    out.cos_delta = t.cos_delta;
    out.delta = std::atan2(t.sin_delta, t.cos_delta);
    return out;
}

Transmission transmissivity(double xi) {
    if (!std::isfinite(xi) || xi < 0.0)
        throw std::domain_error("transmissivity: xi must be finite and >= 0");
    Transmission out;
    out.T = 1.0 / (1.0 + 0.25 * xi * xi);
    out.R = 1.0 - out.T;
    return out;
}

double xi_from_reflectivity(double R) {
    if (!std::isfinite(R) || R < 0.0 || R > 1.0)
        throw std::domain_error("xi_from_reflectivity: R must be in [0, 1]");
    if (R == 1.0)
        throw std::overflow_error("xi_from_reflectivity: perfect mirror (R = 1) unsupported");
    return 2.0 * std::sqrt(R / (1.0 - R));
}

ResonanceTable resonance_table(const ModeParams& p, int n_max) {
    check(p);
    if (n_max < 1) throw std::invalid_argument("resonance_table: n_max must be >= 1");
    const double xi = p.xi();
    if (xi == 0.0)
        throw std::invalid_argument("resonance_table: transparent mirror has no resonances");

    ResonanceTable table;
    table.analytic_seeds = (xi >= 5.0);
    table.hwhm_kq = 1.0 / (xi * xi);
    table.hwhm_q = table.hwhm_kq / p.k;
    table.maximizers_q.reserve(static_cast<std::size_t>(n_max));
    table.minimizers_q.reserve(static_cast<std::size_t>(n_max));
    table.peak_values.reserve(static_cast<std::size_t>(n_max));
    for (int n = 0; n < n_max; ++n) {
        const double q_max = extremizer_kq(2 * n, xi) / p.k;
        const double q_min = extremizer_kq(2 * n + 1, xi) / p.k;
        table.maximizers_q.push_back(q_max);
        table.minimizers_q.push_back(q_min);
        table.peak_values.push_back(eval_mode(q_max, p).L);
    }
    return table;
}

LorentzianLkSq lorentzian_lk_sq(double q, const ModeParams& p, int n) {
    check(p);
    if (!std::isfinite(q)) throw std::domain_error("lorentzian_lk_sq: q must be finite");
    if (n < 0) throw std::invalid_argument("lorentzian_lk_sq: n must be >= 0");
    const double xi = p.xi();
    if (xi == 0.0)
        throw std::invalid_argument("lorentzian_lk_sq: transparent mirror has no resonances");
    const double q2n = extremizer_kq(2 * n, xi) / p.k;
    const double v = p.k * (q - q2n);
    LorentzianLkSq out;
    out.value = (2.0 / (kPi * xi * xi)) / (v * v + 1.0 / (xi * xi * xi * xi));
    out.valid = std::abs(v) < 0.5;
    return out;
}

}  // namespace mirrorlab::modes
