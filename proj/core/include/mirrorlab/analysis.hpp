#ifndef MIRRORLAB_ANALYSIS_HPP
#define MIRRORLAB_ANALYSIS_HPP

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorlab/dynamics.hpp"
#include "mirrorlab/potential.hpp"

namespace mirrorlab::analysis {

enum class FixedPointKind {
    Saddle,        // real eigenvalues of opposite sign
    StableSpiral,  // complex pair with negative real part
    StableNode,    // real eigenvalues, both negative
    Center,        // conservative case (Gamma = 0): purely imaginary pair
};

/// Raised when the linearization sits on a classification boundary
/// (repeated eigenvalue, or an eigenvalue within 1e-8 of zero).
struct DegenerateClassification : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ManifoldSlopes {
    double stable = 0.0;    // lambda_minus
    double unstable = 0.0;  // lambda_plus
};

struct FixedPoint {
    double x = 0.0;
    FixedPointKind kind = FixedPointKind::Center;
    std::array<std::complex<double>, 2> eigenvalues{};
    std::optional<ManifoldSlopes> manifold_slopes;  // saddles only
    std::optional<double> cubic_seed;  // harmonic trap: Lorentzian-cubic root
};

/// Fixed points of the RWA system. RadiationOnly/Friction: the saddle (n*pi, 0)
/// and the attractor (x_n**, 0) for each well n in [n_lo, n_hi]. HarmonicTrap:
/// the first solution of f_rwa(x) = omega_ho^2 (x - x_E) to the right of x_E,
/// found by bracketed root-finding and reported together with the
/// displaced-Lorentzian cubic seed. Returns empty when no root brackets.
std::vector<FixedPoint> fixed_points(const dynamics::Scenario& sc, int n_lo, int n_hi);

/// Classification via the Jacobian [[0, 1], [f' - omega_ho^2, -Gamma]] at
/// (x, 0); f' by Richardson-extrapolated central difference (h = 1e-6).
FixedPoint classify(double x, const dynamics::Scenario& sc);

/// Linearized manifolds of a saddle: the lines x' = lambda_pm (x - x_saddle)
/// with lambda_pm = -Gamma/2 +- sqrt((Gamma/2)^2 + |f'|). The stable manifold
/// takes the minus sign.
ManifoldSlopes manifolds(const FixedPoint& saddle, const dynamics::Scenario& sc);

struct ConditionEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs / lhs
    bool pass = false;    // lhs < rhs / margin_factor
};

/// Audit of the small-velocity/small-acceleration model assumptions over a
/// trajectory. "Much less than" is operationalized as a factor-of-10 margin
/// (configurable); raw lhs/rhs are always reported so users may re-threshold.
struct ValidityReport {
    double max_abs_v = 0.0;              // max |x'|
    double max_abs_a = 0.0;              // max |x''|
    double max_qdot_over_c = 0.0;        // (2/Omega)   max |x'|
    double max_qddot_over_c_omega0 = 0.0;  // (4/Omega^2) max |x''|
    std::vector<ConditionEntry> conditions;  // physical + sufficient bounds
    std::vector<ConditionEntry> rwa_regime;  // RWA-applicability checks
    bool physical_ok = false;       // both direct conditions pass
    bool all_sufficient_ok = false; // every sufficient condition passes
    double margin_factor = 10.0;
};

ValidityReport validity_report(const dynamics::Trajectory& t, const dynamics::Scenario& sc,
                               std::optional<double> tau_from = std::nullopt,
                               double margin_factor = 10.0);

struct BoundedMotion {
    bool bounded = false;
    double v0_max = 0.0;  // sqrt(2 |V(x**)|) <= sqrt(pi)
};

/// Radiation-only RWA: motion is bounded to a well iff E0 <= 0, and the speed
/// at the well bottom cannot exceed sqrt(2 |V(x**)|).
BoundedMotion bounded_motion_check(double E0, const potential::PotentialParams& p);

}  // namespace mirrorlab::analysis

#endif  // MIRRORLAB_ANALYSIS_HPP
