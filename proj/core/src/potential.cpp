#include "mirrorlab/potential.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mirrorlab/root_find.hpp"

namespace mirrorlab::potential {

namespace {

constexpr double kPi = std::numbers::pi;

void check(const PotentialParams& p) {
    if (!std::isfinite(p.xi) || p.xi < 0.0)
        throw std::invalid_argument("PotentialParams: xi must be finite and >= 0");
}

// Denominator 1 + xi^2 sin^2 x - xi sin 2x, strictly positive for all x.
double denom(double x, double xi) {
    const double s = std::sin(x);
    return 1.0 + xi * xi * s * s - xi * std::sin(2.0 * x);
}

// d/dx of the denominator vanishes iff tan(2x) = 2/xi; root of this on a
// bracket locates the force extrema.
double extremum_eq(double x, double xi) { return xi * std::sin(2.0 * x) - 2.0 * std::cos(2.0 * x); }
double extremum_eq_deriv(double x, double xi) { return 2.0 * xi * std::cos(2.0 * x) + 4.0 * std::sin(2.0 * x); }

double polish_extremum(double lo, double hi, double xi) {
    return find_root_newton([xi](double x) { return extremum_eq(x, xi); },
                            [xi](double x) { return extremum_eq_deriv(x, xi); },
                            lo, hi, 1e-15, 1e-14);
}

}  // namespace

double f_rwa(double x, const PotentialParams& p) {
    check(p);
    if (!std::isfinite(x)) throw std::domain_error("f_rwa: x must be finite");
    return -0.5 * (1.0 - 1.0 / denom(x, p.xi));
}

double v_rwa(double x, const PotentialParams& p) {
    check(p);
    if (!std::isfinite(x) || x < 0.0) throw std::domain_error("v_rwa: x must be finite and >= 0");
    const double xi = p.xi;
    // reduce to the fundamental period and take the branch from the sign of
    // tan, which stays consistent with the arctangent across the asymptote
    const double r = x - kPi * std::floor(x / kPi);
    const double t = std::tan(r);
    const double branch = (t < 0.0) ? 0.5 * kPi : 0.0;
    return 0.5 * r - 0.5 * std::atan((1.0 + xi * xi) * t - xi) - 0.5 * std::atan(xi) - branch;
}

double well_minimum_offset(const PotentialParams& p) {
    check(p);
    if (p.xi == 0.0) throw std::invalid_argument("well_minimum_offset: flat potential at xi = 0");
    return std::atan(2.0 / p.xi);
}

double well_minimum_value(const PotentialParams& p) {
    return v_rwa(well_minimum_offset(p), p);
}

double sawtooth_slope(const PotentialParams& p) {
    check(p);
    if (p.xi == 0.0) throw std::invalid_argument("sawtooth_slope: flat potential at xi = 0");
    return -v_rwa(2.0 / p.xi, p) / (kPi - 2.0 / p.xi);
}

ExtremaTable extrema_table(const PotentialParams& p, int n_max) {
    check(p);
    if (p.xi == 0.0) throw std::invalid_argument("extrema_table: flat potential at xi = 0");
    if (n_max < 1) throw std::invalid_argument("extrema_table: n_max must be >= 1");
    const double xi = p.xi;

    ExtremaTable table;
    table.analytic_seeds = (xi >= 5.0);
    table.wells.reserve(static_cast<std::size_t>(n_max));
    for (int n = 0; n < n_max; ++n) {
        ExtremaTable::Well w;
        w.n = n;
        const double base = n * kPi;

        w.v_max_x = base;
        w.v_max = v_rwa(base, p);

        // extremum_eq changes sign on [base, base+pi/4] (max of f) and on
        // [base+pi/2, base+3pi/4] (min of f) for every xi > 0.
        w.f_max_x = polish_extremum(base, base + 0.25 * kPi, xi);
        w.f_max = f_rwa(w.f_max_x, p);
        w.f_min_x = polish_extremum(base + 0.5 * kPi, base + 0.75 * kPi, xi);
        w.f_min = f_rwa(w.f_min_x, p);

        // force zero between the two f extrema = minimizer of V
        w.v_min_x = find_root_bisect([&](double x) { return f_rwa(x, p); },
                                     w.f_max_x, w.f_min_x, 1e-16);
        w.v_min = v_rwa(w.v_min_x, p);

        table.wells.push_back(w);
    }
    return table;
}

double v_sawtooth(double x, const PotentialParams& p) {
    check(p);
    if (!std::isfinite(x) || x < 0.0) throw std::domain_error("v_sawtooth: x must be finite and >= 0");
    if (p.xi == 0.0) throw std::invalid_argument("v_sawtooth: flat potential at xi = 0");
    const double xi = p.xi;
    const double r = x - kPi * std::floor(x / kPi);
    const double v_bottom = v_rwa(2.0 / xi, p);
    if (r < 1.0 / xi) return 0.0;
    if (r < 2.0 / xi) return v_bottom;
    return v_bottom + sawtooth_slope(p) * (r - 2.0 / xi);
}

double f_piecewise(double x, const PotentialParams& p) {
    check(p);
    if (!std::isfinite(x) || x < 0.0) throw std::domain_error("f_piecewise: x must be finite and >= 0");
    if (p.xi == 0.0) throw std::invalid_argument("f_piecewise: flat potential at xi = 0");
    const double r = x - kPi * std::floor(x / kPi);
    if (r < 2.0 / p.xi) return 0.0;
    return -sawtooth_slope(p);
}

LorentzianForce f_lorentzian(double x, const PotentialParams& p) {
    check(p);
    if (!std::isfinite(x)) throw std::domain_error("f_lorentzian: x must be finite");
    if (p.xi == 0.0) throw std::invalid_argument("f_lorentzian: flat potential at xi = 0");
    const double xi = p.xi;
    const double m = std::round(x / kPi);
    const double u = x - (m * kPi + 1.0 / xi);
    LorentzianForce out;
    out.value = -0.5 + (0.5 / (xi * xi)) / (u * u + 1.0 / (xi * xi * xi * xi));
    out.valid = (u > -1.0 / xi) && (u < 1.0 / xi);
    return out;
}

}  // namespace mirrorlab::potential
