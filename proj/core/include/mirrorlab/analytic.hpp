#ifndef MIRRORLAB_ANALYTIC_HPP
#define MIRRORLAB_ANALYTIC_HPP

#include <optional>
#include <vector>

#include "mirrorlab/dynamics.hpp"
#include "mirrorlab/potential.hpp"

namespace mirrorlab::analytic {

enum class SegmentKind {
    ParabolicFall,  // frictionless flight on the sawtooth slope
    UniformLeft,    // frictionless drift across the flat bottom, leftward
    UniformRight,   // frictionless drift across the flat bottom, rightward
    ExpRelax,       // friction-only relaxation on the flat bottom
    ExpFall,        // damped fall on the slope
    Bounce,         // elastic reflection at the wall n*pi + 1/xi (zero length)
};

struct Segment {
    SegmentKind kind = SegmentKind::UniformRight;
    double tau0 = 0.0, tau1 = 0.0;
    double x0 = 0.0, v0 = 0.0;  // state entering the segment (post-bounce)
};

/// Closed-form trajectory assembled from exact solutions on the sawtooth
/// potential's segments, joined with continuity of x and x' and elastic
/// bounces at the wall (where x' flips sign with |x'| preserved).
class PastedOrbit {
  public:
    double x(double tau) const;
    double v(double tau) const;
    dynamics::State at(double tau) const { return {tau, x(tau), v(tau)}; }
    std::vector<dynamics::State> sample(std::size_t n) const;

    const std::vector<Segment>& segments() const { return segments_; }
    double tau_begin() const { return tau_begin_; }
    double tau_end() const { return tau_end_; }
    std::optional<double> period;  // radiation-only orbits

    PastedOrbit(std::vector<Segment> segments, double m_plus, double Gamma,
                double tau_begin, double tau_end);

  private:
    std::vector<Segment> segments_;
    double m_plus_ = 0.5;
    double Gamma_ = 0.0;
    double tau_begin_ = 0.0, tau_end_ = 0.0;
};

/// Radiation-only pasted orbit in well n, launched from the wall n*pi + 1/xi
/// at speed +v0 at tau0. Cycle: uniform drift to the bottom (1/(xi v0)),
/// parabolic flight up the slope and back (2 v0/m+), uniform drift to the
/// wall (1/(xi v0)), elastic bounce; period P = 2 v0/m+ + 2/(xi v0), with
/// minimum 4/sqrt(m+ xi) at v0 = sqrt(m+/xi).
PastedOrbit rwa_pasted(const potential::PotentialParams& p, int well, double v0,
                       double tau0, double tau_end);

/// Initial-speed matching at the well bottom for a target energy E:
/// v = sqrt(2 [E - V(2/xi)]). Throws when E lies below the sawtooth floor.
double ic_match(double E, const potential::PotentialParams& p);

/// Damped pasted orbit: the damped-fall closed form on the slope pasted to
/// the friction-only relaxation on the flat bottom, with elastic bounces at
/// the wall. Segment transitions are located by root-finding on the closed
/// forms. Generation stops when the kinetic energy at a joint falls below
/// 1e-12 or the relaxation asymptote settles inside a region (|x'| < 1e-10).
PastedOrbit friction_pasted(const potential::PotentialParams& p, double Gamma,
                            const dynamics::State& ic, double tau_end);

/// Steady-state oscillation of the driven, damped, trapped mirror:
///   u(tau) ~ offset + amplitude * cos(Omega tau - phase),
///   offset    = (xi^2-1)/(2 w_ho^2),
///   amplitude = (xi^2-1) / (2 sqrt(Gamma^2 Omega^2 + (Omega^2 - w_ho^2)^2)),
///   phase     = arccos[(w_ho^2 - Omega^2)/sqrt(...)] in (0, pi).
/// An order-of-magnitude estimate: it identifies the oscillation frequency
/// Omega and the resonance at Omega = w_ho, but over-predicts the amplitude
/// of the exact solution by up to an order of magnitude.
struct SteadyState {
    double offset = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;
    double Omega = 0.0;
};
SteadyState harmonic_steady_state(const potential::PotentialParams& p, double Omega,
                                  double Gamma, double omega_ho);

}  // namespace mirrorlab::analytic

#endif  // MIRRORLAB_ANALYTIC_HPP
