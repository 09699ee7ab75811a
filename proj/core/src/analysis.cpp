#include "mirrorlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mirrorlab/root_find.hpp"

namespace mirrorlab::analysis {

namespace {

constexpr double kPi = std::numbers::pi;

using dynamics::Kind;
using dynamics::Scenario;
using dynamics::Treatment;

double f_prime(double x, double xi) {
    return derivative([xi](double s) { return potential::f_rwa(s, {xi}); }, x, 1e-6);
}

void require_rwa(const Scenario& sc, const char* what) {
    if (sc.treatment != Treatment::RWA)
        throw std::invalid_argument(std::string(what) + ": RWA treatment required");
}

// Positive root of the displaced-Lorentzian cubic
//   u^3 + u^2/(2 w^2) + u/xi^4 = (1 - 1/xi^2)/(2 xi^2 w^2).
// The left side is strictly increasing for u >= 0, so the root is unique.
double cubic_seed_root(double xi, double omega_ho) {
    const double w2 = omega_ho * omega_ho;
    const double rhs_c = (1.0 - 1.0 / (xi * xi)) / (2.0 * xi * xi * w2);
    auto cubic = [&](double u) {
        return u * u * u + u * u / (2.0 * w2) + u / (xi * xi * xi * xi) - rhs_c;
    };
    double hi = 1.0;
    while (cubic(hi) < 0.0) hi *= 2.0;
    return find_root_bisect(cubic, 0.0, hi, 1e-15);
}

FixedPoint classify_at(double x, const Scenario& sc) {
    const double xi = sc.p.xi;
    const double Gamma = (sc.kind == Kind::RadiationOnly) ? 0.0 : sc.p.Gamma;
    const double w2 = (sc.kind == Kind::HarmonicTrap) ? sc.p.omega_ho * sc.p.omega_ho : 0.0;
    const double fp = f_prime(x, xi) - w2;  // restoring coefficient of the linearization

    // eigenvalues of [[0,1],[fp,-Gamma]]: lambda^2 + Gamma lambda - fp = 0
    const double disc = Gamma * Gamma + 4.0 * fp;
    const double scale = Gamma * Gamma + 4.0 * std::abs(fp) + 1e-30;

    FixedPoint out;
    out.x = x;
    if (std::abs(disc) <= 1e-9 * scale)
        throw DegenerateClassification("repeated eigenvalue: classification boundary");

    if (disc > 0.0) {
        const double r = std::sqrt(disc);
        const double lp = 0.5 * (-Gamma + r);
        const double lm = 0.5 * (-Gamma - r);
        out.eigenvalues = {std::complex<double>(lp, 0.0), std::complex<double>(lm, 0.0)};
        if (std::min(std::abs(lp), std::abs(lm)) < 1e-8)
            throw DegenerateClassification("eigenvalue within 1e-8 of zero");
        if (lp > 0.0 && lm < 0.0) {
            out.kind = FixedPointKind::Saddle;
            out.manifold_slopes = ManifoldSlopes{lm, lp};
        } else if (lp < 0.0 && lm < 0.0) {
            out.kind = FixedPointKind::StableNode;
        } else {
            throw DegenerateClassification("unstable node: outside the model's fixed-point set");
        }
    } else {
        const double re = -0.5 * Gamma;
        const double im = 0.5 * std::sqrt(-disc);
        out.eigenvalues = {std::complex<double>(re, im), std::complex<double>(re, -im)};
        if (Gamma == 0.0) {
            out.kind = FixedPointKind::Center;
        } else if (std::abs(re) < 1e-8) {
            throw DegenerateClassification("eigenvalue within 1e-8 of zero");
        } else {
            out.kind = FixedPointKind::StableSpiral;
        }
    }
    return out;
}

}  // namespace

std::vector<FixedPoint> fixed_points(const Scenario& sc, int n_lo, int n_hi) {
    require_rwa(sc, "fixed_points");
    if (n_lo < 0 || n_hi < n_lo) throw std::invalid_argument("fixed_points: bad well range");
    const double xi = sc.p.xi;
    std::vector<FixedPoint> out;

    if (sc.kind == Kind::HarmonicTrap) {
        // first crossing of f_rwa(x) - w^2 (x - x_E) to the right of x_E:
        // bracket [x_E, minimizer of the well containing x_E]
        const double w2 = sc.p.omega_ho * sc.p.omega_ho;
        auto g = [&](double x) {
            return potential::f_rwa(x, {xi}) - w2 * (x - sc.p.x_E);
        };
        const double n = std::floor(sc.p.x_E / kPi);
        const double x_min = n * kPi + potential::well_minimum_offset({xi});
        if (g(sc.p.x_E) <= 0.0 || g(x_min) >= 0.0) return out;  // no bracket: empty report
        const double root = find_root_bisect(g, sc.p.x_E, x_min, 1e-15);
        FixedPoint fp = classify_at(root, sc);
        const double wall = n * kPi + 1.0 / xi;
        fp.cubic_seed = cubic_seed_root(xi, sc.p.omega_ho) + wall - sc.p.x_E;
        out.push_back(fp);
        return out;
    }

    const auto table = potential::extrema_table({xi}, n_hi + 1);
    for (int n = n_lo; n <= n_hi; ++n) {
        const auto& w = table.wells[static_cast<std::size_t>(n)];
        out.push_back(classify_at(w.v_max_x, sc));  // saddle at n*pi
        out.push_back(classify_at(w.v_min_x, sc));  // attractor / center at x**
    }
    return out;
}

FixedPoint classify(double x, const Scenario& sc) {
    require_rwa(sc, "classify");
    return classify_at(x, sc);
}

ManifoldSlopes manifolds(const FixedPoint& saddle, const Scenario& sc) {
    require_rwa(sc, "manifolds");
    if (saddle.kind != FixedPointKind::Saddle)
        throw std::invalid_argument("manifolds: input is not a saddle");
    const double Gamma = (sc.kind == Kind::RadiationOnly) ? 0.0 : sc.p.Gamma;
    const double w2 = (sc.kind == Kind::HarmonicTrap) ? sc.p.omega_ho * sc.p.omega_ho : 0.0;
    const double fp = f_prime(saddle.x, sc.p.xi) - w2;
    const double r = std::sqrt(0.25 * Gamma * Gamma + fp);
    return {-0.5 * Gamma - r, -0.5 * Gamma + r};
}

ValidityReport validity_report(const dynamics::Trajectory& traj, const Scenario& sc,
                               std::optional<double> tau_from, double margin_factor) {
    if (margin_factor <= 1.0) throw std::invalid_argument("validity_report: margin_factor > 1 required");
    const dynamics::Trajectory window =
        tau_from ? traj.tail(*tau_from) : traj;
    const double t0 = tau_from ? std::max(*tau_from, window.tau_begin()) : window.tau_begin();
    const double t1 = window.tau_end();

    // trajectory maxima of |x'| and |x''|, with parabolic refinement of the
    // sampled acceleration peak
    const std::size_t n = std::max<std::size_t>(50000, 20 * window.step_count());
    double max_v = 0.0, max_a = 0.0;
    std::vector<double> acc(n);
    const double dt = (t1 - t0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = window.at(t0 + dt * static_cast<double>(i));
        max_v = std::max(max_v, std::abs(s.v));
        acc[i] = std::abs(dynamics::rhs(s, sc));
    }
    std::size_t imax = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (acc[i] > acc[imax]) imax = i;
    max_a = acc[imax];
    if (imax > 0 && imax + 1 < n) {
        const double ym = acc[imax - 1], y0 = acc[imax], yp = acc[imax + 1];
        const double den = ym - 2.0 * y0 + yp;
        if (den < 0.0) max_a = y0 - 0.125 * (yp - ym) * (yp - ym) / den;
    }

    const double Omega = sc.p.Omega;
    const double xi = sc.p.xi;
    const double Gamma = (sc.kind == Kind::RadiationOnly) ? 0.0 : sc.p.Gamma;

    ValidityReport rep;
    rep.margin_factor = margin_factor;
    rep.max_abs_v = max_v;
    rep.max_abs_a = max_a;
    rep.max_qdot_over_c = 2.0 / Omega * max_v;
    rep.max_qddot_over_c_omega0 = 4.0 / (Omega * Omega) * max_a;

    auto entry = [&](std::string name, double lhs, double rhs_v) {
        ConditionEntry e;
        e.name = std::move(name);
        e.lhs = lhs;
        e.rhs = rhs_v;
        e.margin = lhs > 0.0 ? rhs_v / lhs : std::numeric_limits<double>::infinity();
        e.pass = lhs * margin_factor < rhs_v;
        return e;
    };

    rep.conditions.push_back(entry("|qdot/c| << 1", rep.max_qdot_over_c, 1.0));
    rep.conditions.push_back(entry("|qddot/(c omega0)| << 1", rep.max_qddot_over_c_omega0, 1.0));

    const double f_max = potential::extrema_table({xi}, 1).wells[0].f_max;
    const bool rwa = (sc.treatment == Treatment::RWA);
    double E0 = 0.0;
    double vel_bound = 2.0 * max_v;  // driven scenarios: observed maximum
    if (rwa) {
        E0 = dynamics::energy(window.at(t0), sc);
        vel_bound = 2.0 * std::sqrt(std::max(2.0 * E0 + kPi, 0.0));
    }

    switch (sc.kind) {
        case Kind::RadiationOnly:
            rep.conditions.push_back(entry("acceleration: 8 f_max << Omega^2",
                                           8.0 * f_max, Omega * Omega));
            rep.conditions.push_back(entry(rwa ? "velocity: 2 sqrt(2 E0 + pi) << Omega"
                                               : "velocity: 2 max|x'| << Omega",
                                           vel_bound, Omega));
            if (xi >= 5.0)
                rep.conditions.push_back(entry("large-xi: 4 xi^2 << Omega^2",
                                               4.0 * xi * xi, Omega * Omega));
            break;
        case Kind::Friction:
            if (rwa) {
                rep.conditions.push_back(
                    entry("acceleration: 4 f_max + 4 Gamma sqrt(2 E0 + pi) << Omega^2",
                          4.0 * f_max + 2.0 * Gamma * vel_bound, Omega * Omega));
                rep.conditions.push_back(entry("velocity: 2 sqrt(2 E0 + pi) << Omega",
                                               vel_bound, Omega));
                if (xi >= 5.0)
                    rep.conditions.push_back(
                        entry("large-xi: 4 Gamma sqrt(pi) + 2 xi^2 << Omega^2",
                              4.0 * Gamma * std::sqrt(kPi) + 2.0 * xi * xi, Omega * Omega));
            } else {
                rep.conditions.push_back(
                    entry("acceleration: 8 f_max + 4 Gamma max|x'| << Omega^2",
                          8.0 * f_max + 4.0 * Gamma * max_v, Omega * Omega));
                rep.conditions.push_back(entry("velocity: 2 max|x'| << Omega",
                                               vel_bound, Omega));
                if (xi >= 5.0)
                    rep.conditions.push_back(
                        entry("large-xi: 4 Gamma max|x'| + 4 xi^2 << Omega^2",
                              4.0 * Gamma * max_v + 4.0 * xi * xi, Omega * Omega));
            }
            break;
        case Kind::HarmonicTrap: {
            double max_u = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto s = window.at(t0 + dt * static_cast<double>(i));
                max_u = std::max(max_u, std::abs(s.x - sc.p.x_E));
            }
            const double w2 = sc.p.omega_ho * sc.p.omega_ho;
            rep.conditions.push_back(
                entry("acceleration: 8 f_max + 2 Gamma Omega |qdot/c| + 4 w_ho^2 max|x-x_E| << Omega^2",
                      8.0 * f_max + 2.0 * Gamma * Omega * rep.max_qdot_over_c + 4.0 * w2 * max_u,
                      Omega * Omega));
            rep.conditions.push_back(entry(rwa ? "velocity: 2 sqrt(2 E0 + pi) << Omega"
                                               : "velocity: 2 max|x'| << Omega",
                                           vel_bound, Omega));
            rep.conditions.push_back(entry("trap scales: max(Gamma, xi, w_ho) << Omega/2",
                                           std::max({Gamma, xi, sc.p.omega_ho}), 0.5 * Omega));
            break;
        }
    }

    // RWA-regime checks (meaningful for both treatments: they say whether the
    // rotating-wave average describes this parameter point)
    double period = 1.0;  // the drive must beat the x(tau) timescale, ~1 by default
    if (auto pe = dynamics::period_estimate(window)) period = pe->mean;
    rep.rwa_regime.push_back(entry("drive resolution: 2 pi / Omega << P", 2.0 * kPi / Omega, period));
    if (xi >= 5.0) {
        const double m_plus = potential::sawtooth_slope({xi});
        rep.rwa_regime.push_back(entry("large-xi: (pi/2) sqrt(m+ xi) << Omega",
                                       0.5 * kPi * std::sqrt(m_plus * xi), Omega));
    }
    if (sc.kind == Kind::HarmonicTrap)
        rep.rwa_regime.push_back(entry("trap amplitude: (xi^2 - 1)/2 << Omega^2",
                                       0.5 * (xi * xi - 1.0), Omega * Omega));

    rep.physical_ok = rep.conditions[0].pass && rep.conditions[1].pass;
    rep.all_sufficient_ok = true;
    for (const auto& e : rep.conditions) rep.all_sufficient_ok &= e.pass;
    return rep;
}

BoundedMotion bounded_motion_check(double E0, const potential::PotentialParams& p) {
    if (!std::isfinite(E0)) throw std::invalid_argument("bounded_motion_check: E0 must be finite");
    BoundedMotion out;
    out.bounded = (E0 <= 0.0);
    out.v0_max = std::sqrt(2.0 * std::abs(potential::well_minimum_value(p)));
    return out;
}

}  // namespace mirrorlab::analysis
