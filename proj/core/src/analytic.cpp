#include "mirrorlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mirrorlab/root_find.hpp"

namespace mirrorlab::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSettleSpeed = 1e-10;
constexpr double kJointKineticFloor = 1e-12;
constexpr std::size_t kMaxSegments = 1'000'000;

// phi1(z) = (1 - e^-z)/z and phi2(z) = (e^-z - 1 + z)/z^2, the damped-fall
// shape functions; series below 1e-4 keeps the Gamma -> 0 limit exact.
double phi1(double z) {
    if (std::abs(z) < 1e-4) return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
    return -std::expm1(-z) / z;
}
double phi2(double z) {
    if (std::abs(z) < 1e-4) return 0.5 - z / 6.0 + z * z / 24.0 - z * z * z / 120.0;
    return (std::expm1(-z) + z) / (z * z);
}

struct SegmentLaw {
    double m_plus = 0.5;
    double Gamma = 0.0;

    double x(const Segment& s, double tau) const {
        const double dt = tau - s.tau0;
        switch (s.kind) {
            case SegmentKind::ParabolicFall:
                return s.x0 + s.v0 * dt - 0.5 * m_plus * dt * dt;
            case SegmentKind::UniformLeft:
            case SegmentKind::UniformRight:
                return s.x0 + s.v0 * dt;
            case SegmentKind::ExpRelax:
                return s.x0 + s.v0 * dt * phi1(Gamma * dt);
            case SegmentKind::ExpFall:
                return s.x0 + s.v0 * dt * phi1(Gamma * dt) - m_plus * dt * dt * phi2(Gamma * dt);
            case SegmentKind::Bounce:
                return s.x0;
        }
        return s.x0;
    }

    double v(const Segment& s, double tau) const {
        const double dt = tau - s.tau0;
        switch (s.kind) {
            case SegmentKind::ParabolicFall:
                return s.v0 - m_plus * dt;
            case SegmentKind::UniformLeft:
            case SegmentKind::UniformRight:
                return s.v0;
            case SegmentKind::ExpRelax:
                return s.v0 * std::exp(-Gamma * dt);
            case SegmentKind::ExpFall:
                return s.v0 * std::exp(-Gamma * dt) - m_plus * dt * phi1(Gamma * dt);
            case SegmentKind::Bounce:
                return s.v0;
        }
        return s.v0;
    }
};

}  // namespace

PastedOrbit::PastedOrbit(std::vector<Segment> segments, double m_plus, double Gamma,
                         double tau_begin, double tau_end)
    : segments_(std::move(segments)),
      m_plus_(m_plus),
      Gamma_(Gamma),
      tau_begin_(tau_begin),
      tau_end_(tau_end) {
    if (segments_.empty()) throw std::invalid_argument("PastedOrbit: no segments");
}

double PastedOrbit::x(double tau) const {
    const SegmentLaw law{m_plus_, Gamma_};
    tau = std::clamp(tau, tau_begin_, tau_end_);
    auto it = std::upper_bound(segments_.begin(), segments_.end(), tau,
                               [](double t, const Segment& s) { return t < s.tau1; });
    if (it == segments_.end()) --it;
    return law.x(*it, tau);
}

double PastedOrbit::v(double tau) const {
    const SegmentLaw law{m_plus_, Gamma_};
    tau = std::clamp(tau, tau_begin_, tau_end_);
    auto it = std::upper_bound(segments_.begin(), segments_.end(), tau,
                               [](double t, const Segment& s) { return t < s.tau1; });
    if (it == segments_.end()) --it;
    return law.v(*it, tau);
}

std::vector<dynamics::State> PastedOrbit::sample(std::size_t n) const {
    if (n < 2) throw std::invalid_argument("PastedOrbit::sample: need n >= 2");
    std::vector<dynamics::State> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = tau_begin_ + (tau_end_ - tau_begin_) * static_cast<double>(i) /
                                            static_cast<double>(n - 1);
        out.push_back(at(tau));
    }
    return out;
}

PastedOrbit rwa_pasted(const potential::PotentialParams& p, int well, double v0,
                       double tau0, double tau_end) {
    if (well < 0) throw std::invalid_argument("rwa_pasted: well must be >= 0");
    if (!(tau_end > tau0)) throw std::invalid_argument("rwa_pasted: tau_end must exceed tau0");
    const double xi = p.xi;
    if (xi <= 0.0) throw std::invalid_argument("rwa_pasted: xi must be > 0");
    const double depth = -potential::v_rwa(2.0 / xi, p);
    if (!(v0 > 0.0) || 0.5 * v0 * v0 > depth)
        throw std::invalid_argument("rwa_pasted: v0 out of range, orbit would leave the well");

    const double m_plus = potential::sawtooth_slope(p);
    const double wall = well * kPi + 1.0 / xi;
    const double bottom = well * kPi + 2.0 / xi;
    const double d_drift = 1.0 / (xi * v0);   // wall <-> bottom at speed v0
    const double d_flight = 2.0 * v0 / m_plus;  // up the slope and back

    std::vector<Segment> segs;
    double t = tau0;
    while (t < tau_end) {
        segs.push_back({SegmentKind::UniformRight, t, std::min(t + d_drift, tau_end), wall, v0});
        t += d_drift;
        if (t >= tau_end) break;
        segs.push_back({SegmentKind::ParabolicFall, t, std::min(t + d_flight, tau_end), bottom, v0});
        t += d_flight;
        if (t >= tau_end) break;
        segs.push_back({SegmentKind::UniformLeft, t, std::min(t + d_drift, tau_end), bottom, -v0});
        t += d_drift;
        if (t < tau_end) segs.push_back({SegmentKind::Bounce, t, t, wall, v0});
        if (segs.size() > kMaxSegments) throw std::runtime_error("rwa_pasted: runaway pasting");
    }
    PastedOrbit orbit(std::move(segs), m_plus, 0.0, tau0, tau_end);
    orbit.period = d_flight + 2.0 * d_drift;
    return orbit;
}

double ic_match(double E, const potential::PotentialParams& p) {
    if (p.xi <= 0.0) throw std::invalid_argument("ic_match: xi must be > 0");
    const double floor_v = potential::v_rwa(2.0 / p.xi, p);
    if (E < floor_v) throw std::invalid_argument("ic_match: energy below the sawtooth floor");
    return std::sqrt(2.0 * (E - floor_v));
}

PastedOrbit friction_pasted(const potential::PotentialParams& p, double Gamma,
                            const dynamics::State& ic, double tau_end) {
    const double xi = p.xi;
    if (xi <= 0.0) throw std::invalid_argument("friction_pasted: xi must be > 0");
    if (!(Gamma > 0.0))
        throw std::invalid_argument("friction_pasted: Gamma must be > 0 (use rwa_pasted)");
    if (!(tau_end > ic.tau)) throw std::invalid_argument("friction_pasted: tau_end must exceed ic.tau");

    const double m_plus = potential::sawtooth_slope(p);
    const int well = static_cast<int>(std::floor(ic.x / kPi));
    const double wall = well * kPi + 1.0 / xi;
    const double bottom = well * kPi + 2.0 / xi;
    const double top = (well + 1) * kPi;
    if (ic.x < wall - 1e-12 || ic.x > top)
        throw std::invalid_argument("friction_pasted: initial position outside [wall, top] of its well");
    const double v_bottom = potential::v_rwa(2.0 / xi, p);
    const double v_here =
        (ic.x <= bottom) ? v_bottom : v_bottom + m_plus * (ic.x - bottom);
    if (0.5 * ic.v * ic.v + v_here >= 0.0)
        throw std::invalid_argument("friction_pasted: energy overflow, orbit would leave the well");

    const SegmentLaw law{m_plus, Gamma};
    std::vector<Segment> segs;
    double t = ic.tau;
    double x = std::max(ic.x, wall);
    double v = ic.v;

    // forward event loop: each iteration emits one segment up to its exit
    // event (boundary crossing, bounce, or settlement) or tau_end
    while (t < tau_end) {
        if (segs.size() > kMaxSegments)
            throw std::runtime_error("friction_pasted: runaway pasting");
        const bool on_slope = (x > bottom) || (x == bottom && v > 0.0);
        if (!on_slope && 0.5 * v * v < kJointKineticFloor) {
            // kinetic energy exhausted on the flat: hold the relaxation form
            segs.push_back({SegmentKind::ExpRelax, t, tau_end, x, v});
            break;
        }
        Segment s;
        s.tau0 = t;
        s.x0 = x;
        s.v0 = v;
        if (on_slope) {
            s.kind = SegmentKind::ExpFall;
            // exit: first crossing of the bottom boundary moving left
            const double s_turn = (v > 0.0) ? std::log1p(Gamma * v / m_plus) / Gamma : 0.0;
            double lo = s_turn;
            double hi = std::max(s_turn, 1.0 / Gamma);
            while (law.x(s, t + hi) > bottom) {
                hi *= 2.0;
                if (hi > 1e12) throw std::runtime_error("friction_pasted: no slope exit found");
            }
            const double s_exit =
                find_root_bisect([&](double dt) { return law.x(s, t + dt) - bottom; }, lo, hi, 1e-15);
            s.tau1 = t + s_exit;
            if (s.tau1 >= tau_end) {
                s.tau1 = tau_end;
                segs.push_back(s);
                break;
            }
            segs.push_back(s);
            t = s.tau1;
            x = bottom;
            v = law.v(s, s.tau1);
        } else {
            s.kind = SegmentKind::ExpRelax;
            const double x_inf = x + v / Gamma;
            double target = 0.0;
            bool crosses = false;
            if (v < 0.0 && x_inf < wall) {
                target = wall;
                crosses = true;
            } else if (v > 0.0 && x_inf > bottom) {
                target = bottom;
                crosses = true;
            }
            if (!crosses) {
                // asymptotes inside the flat region: settled
                const double s_settle = std::log(std::abs(v) / kSettleSpeed) / Gamma;
                s.tau1 = std::min(tau_end, t + std::max(s_settle, 0.0));
                segs.push_back(s);
                if (s.tau1 >= tau_end) break;
                segs.push_back({SegmentKind::ExpRelax, s.tau1, tau_end, law.x(s, s.tau1),
                                law.v(s, s.tau1)});
                break;
            }
            // crossing time from the closed form: 1 - e^{-G dt} = G (target-x)/v
            const double arg = 1.0 - Gamma * (target - x) / v;
            const double s_cross = -std::log(arg) / Gamma;
            s.tau1 = t + s_cross;
            if (s.tau1 >= tau_end) {
                s.tau1 = tau_end;
                segs.push_back(s);
                break;
            }
            segs.push_back(s);
            t = s.tau1;
            v = law.v(s, s.tau1);
            x = target;
            if (target == wall) {
                v = std::abs(v);  // elastic bounce
                segs.push_back({SegmentKind::Bounce, t, t, wall, v});
            }
        }
    }
    return PastedOrbit(std::move(segs), m_plus, Gamma, ic.tau, tau_end);
}

SteadyState harmonic_steady_state(const potential::PotentialParams& p, double Omega,
                                  double Gamma, double omega_ho) {
    if (p.xi <= 0.0) throw std::invalid_argument("harmonic_steady_state: xi must be > 0");
    if (!(Omega > 0.0) || !(omega_ho > 0.0) || Gamma < 0.0)
        throw std::invalid_argument("harmonic_steady_state: need Omega > 0, omega_ho > 0, Gamma >= 0");
    const double xi = p.xi;
    const double w2 = omega_ho * omega_ho;
    const double det = std::hypot(Gamma * Omega, Omega * Omega - w2);
    SteadyState out;
    out.Omega = Omega;
    out.offset = (xi * xi - 1.0) / (2.0 * w2);
    out.amplitude = (xi * xi - 1.0) / (2.0 * det);
    out.phase = std::acos(std::clamp((w2 - Omega * Omega) / det, -1.0, 1.0));
    return out;
}

}  // namespace mirrorlab::analytic
