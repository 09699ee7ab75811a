#include "mirrorlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mirrorlab/modes.hpp"
#include "mirrorlab/root_find.hpp"

namespace mirrorlab::dynamics {

namespace {

constexpr double kPi = std::numbers::pi;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// Error coefficients b - b*.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous-extension coefficients.
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

struct Vec2 {
    double x = 0.0, v = 0.0;
};

Vec2 deriv(double tau, const Vec2& y, const Scenario& sc) {
    return {y.v, rhs({tau, y.x, y.v}, sc)};
}

double dense_eval(const double c[5], double theta) {
    const double t1 = 1.0 - theta;
    return c[0] + theta * (c[1] + t1 * (c[2] + theta * (c[3] + t1 * c[4])));
}

}  // namespace

Scenario Scenario::radiation(double xi, double Omega, Treatment t) {
    Scenario sc;
    sc.kind = Kind::RadiationOnly;
    sc.treatment = t;
    sc.p.xi = xi;
    sc.p.Omega = Omega;
    sc.validate();
    return sc;
}

Scenario Scenario::friction(double xi, double Omega, double Gamma, Treatment t) {
    Scenario sc;
    sc.kind = Kind::Friction;
    sc.treatment = t;
    sc.p.xi = xi;
    sc.p.Omega = Omega;
    sc.p.Gamma = Gamma;
    sc.validate();
    return sc;
}

Scenario Scenario::harmonic_trap(double xi, double Omega, double Gamma,
                                 double omega_ho, double x_E, Treatment t) {
    Scenario sc;
    sc.kind = Kind::HarmonicTrap;
    sc.treatment = t;
    sc.p.xi = xi;
    sc.p.Omega = Omega;
    sc.p.Gamma = Gamma;
    sc.p.omega_ho = omega_ho;
    sc.p.x_E = x_E;
    sc.validate();
    return sc;
}

void Scenario::validate() const {
    if (!std::isfinite(p.xi) || p.xi < 0.0)
        throw std::invalid_argument("Scenario: xi must be finite and >= 0");
    if (treatment == Treatment::FullDriven && (!std::isfinite(p.Omega) || p.Omega <= 0.0))
        throw std::invalid_argument("Scenario: FullDriven requires Omega > 0");
    switch (kind) {
        case Kind::RadiationOnly:
            if (p.Gamma != 0.0 || p.omega_ho != 0.0)
                throw std::invalid_argument("Scenario: RadiationOnly has no friction or trap");
            break;
        case Kind::Friction:
            if (!std::isfinite(p.Gamma) || p.Gamma < 0.0)
                throw std::invalid_argument("Scenario: Friction requires Gamma >= 0");
            if (p.omega_ho != 0.0)
                throw std::invalid_argument("Scenario: Friction has no trap");
            break;
        case Kind::HarmonicTrap: {
            if (!std::isfinite(p.Gamma) || p.Gamma < 0.0)
                throw std::invalid_argument("Scenario: HarmonicTrap requires Gamma >= 0");
            if (!std::isfinite(p.omega_ho) || p.omega_ho <= 0.0)
                throw std::invalid_argument("Scenario: HarmonicTrap requires omega_ho > 0");
            if (p.xi <= 0.0)
                throw std::invalid_argument("Scenario: HarmonicTrap requires xi > 0");
            // The trap centre must sit where the drive is on cavity resonance:
            // within the resonance half-width 1/xi^2 of the polished force
            // maximizer of its well.
            const double n = std::floor(p.x_E / kPi);
            if (n < 0.0)
                throw std::invalid_argument("Scenario: x_E must be >= 0");
            const auto table = potential::extrema_table({p.xi}, 1);
            const double x2n = n * kPi + table.wells[0].f_max_x;
            if (std::abs(p.x_E - x2n) > 1.0 / (p.xi * p.xi))
                throw std::invalid_argument(
                    "Scenario: x_E is not a resonance position (|x_E - x_2n| > 1/xi^2)");
            break;
        }
    }
}

double rhs(const State& s, const Scenario& sc) {
    const double xi = sc.p.xi;
    double a = potential::f_rwa(s.x, {xi});
    if (sc.treatment == Treatment::FullDriven) {
        // cos(Omega*tau + 2x - 2*delta) expanded through the trig pair of the
        // scattering phase; immune to any 2*pi branch shift of delta.
        const auto t = modes::delta_trig(s.x, xi);
        const double cos2d = t.cos_delta * t.cos_delta - t.sin_delta * t.sin_delta;
        const double sin2d = 2.0 * t.sin_delta * t.cos_delta;
        const double A = sc.p.Omega * s.tau + 2.0 * s.x;
        a *= 1.0 + std::cos(A) * cos2d + std::sin(A) * sin2d;
    }
    if (sc.kind != Kind::RadiationOnly) a -= sc.p.Gamma * s.v;
    if (sc.kind == Kind::HarmonicTrap)
        a -= sc.p.omega_ho * sc.p.omega_ho * (s.x - sc.p.x_E);
    return a;
}

double Trajectory::tau_begin() const {
    if (steps_.empty()) throw std::logic_error("Trajectory: empty");
    return steps_.front().t0;
}

double Trajectory::tau_end() const {
    if (steps_.empty()) throw std::logic_error("Trajectory: empty");
    return steps_.back().t0 + steps_.back().span;
}

State Trajectory::at(double tau) const {
    if (steps_.empty()) throw std::logic_error("Trajectory: empty");
    const double t0 = tau_begin();
    const double t1 = tau_end();
    if (tau < t0 - 1e-12 * (1.0 + std::abs(t0)) || tau > t1 + 1e-12 * (1.0 + std::abs(t1)))
        throw std::out_of_range("Trajectory::at: tau outside the integrated span");
    tau = std::clamp(tau, t0, t1);
    // first step whose end lies at or beyond tau
    auto it = std::lower_bound(steps_.begin(), steps_.end(), tau,
                               [](const TrajectoryStep& s, double t) { return s.t0 + s.span < t; });
    if (it == steps_.end()) --it;
    const double theta = std::clamp((tau - it->t0) / it->h, 0.0, it->span / it->h);
    return {tau, dense_eval(it->cx, theta), dense_eval(it->cv, theta)};
}

std::vector<State> Trajectory::sample(std::size_t n) const {
    if (n < 2) throw std::invalid_argument("Trajectory::sample: need n >= 2");
    const double t0 = tau_begin();
    const double t1 = tau_end();
    std::vector<State> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
        out.push_back(at(tau));
    }
    return out;
}

State Trajectory::back() const { return at(tau_end()); }

Trajectory Trajectory::tail(double tau_from) const {
    Trajectory out;
    out.status = status;
    out.diagnostic = diagnostic;
    for (const auto& s : steps_) {
        if (s.t0 + s.span >= tau_from) out.steps_.push_back(s);
    }
    if (out.steps_.empty() && !steps_.empty()) out.steps_.push_back(steps_.back());
    return out;
}

Trajectory integrate(const Scenario& sc, const State& ic, double tau_end, Tolerances tol) {
    sc.validate();
    if (!(tau_end > ic.tau)) throw std::invalid_argument("integrate: tau_end must exceed ic.tau");
    if (!(tol.rel >= 1e-12 && tol.rel <= 1e-6))
        throw std::invalid_argument("integrate: tol.rel must lie in [1e-12, 1e-6]");
    if (!(tol.abs > 0.0)) throw std::invalid_argument("integrate: tol.abs must be > 0");
    if (!std::isfinite(ic.x) || !std::isfinite(ic.v) || ic.x < 0.0)
        throw std::invalid_argument("integrate: initial state must be finite with x >= 0");

    const double span = tau_end - ic.tau;
    double h_max = span;
    if (sc.treatment == Treatment::FullDriven)
        h_max = std::min(h_max, 2.0 * kPi / (20.0 * sc.p.Omega));

    Trajectory traj;
    double t = ic.tau;
    Vec2 y{ic.x, ic.v};
    Vec2 k1 = deriv(t, y, sc);

    // initial step from the scaled norms of y and f (Hairer's heuristic)
    auto scnorm = [&](const Vec2& a, const Vec2& ref) {
        const double sx = tol.abs + tol.rel * std::abs(ref.x);
        const double sv = tol.abs + tol.rel * std::abs(ref.v);
        return std::sqrt(0.5 * ((a.x / sx) * (a.x / sx) + (a.v / sv) * (a.v / sv)));
    };
    double h;
    {
        const double d0 = scnorm(y, y);
        const double d1n = scnorm(k1, y);
        double h0 = (d0 < 1e-10 || d1n < 1e-10) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min(h0, h_max);
        const Vec2 y1{y.x + h0 * k1.x, y.v + h0 * k1.v};
        const Vec2 f1 = deriv(t + h0, y1, sc);
        const Vec2 df{f1.x - k1.x, f1.v - k1.v};
        const double d2 = scnorm(df, y) / h0;
        double h1 = (std::max(d1n, d2) <= 1e-15)
                        ? std::max(1e-6, h0 * 1e-3)
                        : std::pow(0.01 / std::max(d1n, d2), 0.2);
        h = std::min({100.0 * h0, h1, h_max, span});
    }

    double facold = 1e-4;
    constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
    constexpr double max_shrink = 5.0, max_growth = 5.0;  // hnew in [h/5, 5h]
    const std::size_t max_steps = 50'000'000;

    for (std::size_t nstep = 0;; ++nstep) {
        if (nstep >= max_steps) {
            traj.status = IntegrationStatus::StepUnderflow;
            traj.diagnostic = "step budget exhausted";
            return traj;
        }
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            traj.status = IntegrationStatus::StepUnderflow;
            traj.diagnostic = "step size underflow at tau = " + std::to_string(t);
            return traj;
        }
        bool last = false;
        if (t + h >= tau_end) {
            h = tau_end - t;
            last = true;
        }

        const Vec2 k2 = deriv(t + a21 * h, {y.x + h * a21 * k1.x, y.v + h * a21 * k1.v}, sc);
        const Vec2 k3 = deriv(t + 0.3 * h,
                              {y.x + h * (a31 * k1.x + a32 * k2.x),
                               y.v + h * (a31 * k1.v + a32 * k2.v)},
                              sc);
        const Vec2 k4 = deriv(t + 0.8 * h,
                              {y.x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
                               y.v + h * (a41 * k1.v + a42 * k2.v + a43 * k3.v)},
                              sc);
        const Vec2 k5 = deriv(t + 8.0 / 9.0 * h,
                              {y.x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
                               y.v + h * (a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v)},
                              sc);
        const Vec2 k6 = deriv(t + h,
                              {y.x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x +
                                          a65 * k5.x),
                               y.v + h * (a61 * k1.v + a62 * k2.v + a63 * k3.v + a64 * k4.v +
                                          a65 * k5.v)},
                              sc);
        const Vec2 y1{y.x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x + b6 * k6.x),
                      y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v)};
        const Vec2 k7 = deriv(t + h, y1, sc);

        const Vec2 errv{h * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x + e6 * k6.x + e7 * k7.x),
                        h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v)};
        const double sx = tol.abs + tol.rel * std::max(std::abs(y.x), std::abs(y1.x));
        const double sv = tol.abs + tol.rel * std::max(std::abs(y.v), std::abs(y1.v));
        double err = std::sqrt(0.5 * ((errv.x / sx) * (errv.x / sx) +
                                      (errv.v / sv) * (errv.v / sv)));
        if (!std::isfinite(err)) err = 10.0;  // reject and shrink

        const double fac11 = std::pow(std::max(err, 1e-16), expo1);
        if (err <= 1.0) {
            // accepted: store the continuous extension of this step
            TrajectoryStep st;
            st.t0 = t;
            st.h = h;
            st.span = h;
            auto fill = [&](double c[5], double y0c, double y1c, double k1c, double k3c,
                            double k4c, double k5c, double k6c, double k7c) {
                const double dy = y1c - y0c;
                c[0] = y0c;
                c[1] = dy;
                c[2] = h * k1c - dy;
                c[3] = dy - h * k7c - c[2];
                c[4] = h * (d1 * k1c + d3 * k3c + d4 * k4c + d5 * k5c + d6 * k6c + d7 * k7c);
            };
            fill(st.cx, y.x, y1.x, k1.x, k3.x, k4.x, k5.x, k6.x, k7.x);
            fill(st.cv, y.v, y1.v, k1.v, k3.v, k4.v, k5.v, k6.v, k7.v);
            traj.steps_.push_back(st);

            // half-line violation: locate x = 0 on the dense output, clip the
            // step there, and stop with the partial trajectory
            if (y1.x < 0.0) {
                const auto& cs = traj.steps_.back();
                const double theta = find_root_bisect(
                    [&](double th) { return dense_eval(cs.cx, th); }, 0.0, 1.0, 1e-15);
                // clip a hair before the crossing so samples stay on x >= 0
                traj.steps_.back().span = theta * h * (1.0 - 1e-12);
                traj.status = IntegrationStatus::HalfLineViolation;
                traj.diagnostic =
                    "mirror reached the fixed wall (x = 0) near tau = " +
                    std::to_string(t + theta * h);
                return traj;
            }

            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(1.0 / max_growth, std::min(max_shrink, fac / safe));
            facold = std::max(err, 1e-4);
            t += h;
            y = y1;
            k1 = k7;  // FSAL
            if (last) {
                traj.status = IntegrationStatus::Completed;
                return traj;
            }
            h = std::min(h / fac, h_max);
        } else {
            // rejected: shrink and retry
            h = h / std::min(max_shrink, fac11 / safe);
        }
    }
}

double energy(const State& s, const Scenario& sc) {
    if (sc.treatment == Treatment::FullDriven)
        throw std::invalid_argument("energy: not defined for the driven treatment");
    double E = 0.5 * s.v * s.v + potential::v_rwa(s.x, {sc.p.xi});
    if (sc.kind == Kind::HarmonicTrap) {
        const double u = s.x - sc.p.x_E;
        E += 0.5 * sc.p.omega_ho * sc.p.omega_ho * u * u;
    }
    return E;
}

namespace {

std::optional<PeriodEstimate> estimate_from_crossings(const std::vector<double>& times) {
    if (times.size() < 4) return std::nullopt;  // need >= 3 full recurrences
    std::vector<double> gaps;
    gaps.reserve(times.size() - 1);
    for (std::size_t i = 1; i < times.size(); ++i) gaps.push_back(times[i] - times[i - 1]);
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    var /= static_cast<double>(gaps.size());
    return PeriodEstimate{mean, std::sqrt(var), static_cast<int>(times.size())};
}

}  // namespace

std::optional<PeriodEstimate> period_estimate(const Trajectory& t) {
    const std::size_t n = std::max<std::size_t>(8192, 8 * t.step_count());
    const auto samples = t.sample(n);
    double mean = 0.0;
    for (const auto& s : samples) mean += s.x;
    mean /= static_cast<double>(samples.size());
    return period_estimate(t, mean);
}

std::optional<PeriodEstimate> period_estimate(const Trajectory& t, double level) {
    const std::size_t n = std::max<std::size_t>(8192, 8 * t.step_count());
    const auto samples = t.sample(n);
    std::vector<double> times;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double a = samples[i - 1].x - level;
        const double b = samples[i].x - level;
        if (a < 0.0 && b >= 0.0) {
            // refine on the dense output
            const double tau = find_root_bisect(
                [&](double s) { return t.at(s).x - level; }, samples[i - 1].tau,
                samples[i].tau, 1e-13);
            times.push_back(tau);
        }
    }
    return estimate_from_crossings(times);
}

std::optional<PeriodEstimate> period_from_samples(const std::vector<State>& samples) {
    if (samples.size() < 8) return std::nullopt;
    double level = 0.0;
    for (const auto& s : samples) level += s.x;
    level /= static_cast<double>(samples.size());
    std::vector<double> times;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double a = samples[i - 1].x - level;
        const double b = samples[i].x - level;
        if (a < 0.0 && b >= 0.0) {
            const double frac = a / (a - b);
            times.push_back(samples[i - 1].tau + frac * (samples[i].tau - samples[i - 1].tau));
        }
    }
    return estimate_from_crossings(times);
}

}  // namespace mirrorlab::dynamics
