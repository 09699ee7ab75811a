#ifndef MIRRORLAB_PARAMS_HPP
#define MIRRORLAB_PARAMS_HPP

#include <optional>
#include <string>
#include <vector>

namespace mirrorlab::params {

constexpr double speed_of_light = 2.99792458e8;  // m/s

/// Gold-coated cantilever standing in for the movable mirror. SI throughout.
struct Cantilever {
    double length = 0.0;          // m
    double width = 0.0;           // m
    double thickness = 0.0;       // m
    double spring_constant = 0.0; // N/m
    double mode_frequency = 0.0;  // fundamental mechanical mode, rad/s
    double damping_rate = 0.0;    // 1/s
};

struct Laser {
    double wavelength = 0.0;   // m
    double max_power = 0.0;    // W
    double reflectivity = 0.0; // mirror reflectivity at this wavelength, in [0,1); 0 = unknown
};

/// Laboratory quantities. g0 is the single Gaussian-unit artifact (N^1/2);
/// it enters only through Delta and the laser-power bound.
struct PhysicalParams {
    double chi0 = 0.0;   // coupling length (m)
    double M0 = 0.0;     // mass per unit area (kg/m^2)
    double k_N0 = 0.0;   // laser wave number (1/m)
    double g0 = 0.0;     // field strength (N^1/2)
    double gamma = 0.0;  // friction per unit area (N s/m^3)
    double k_ho = 0.0;   // trap stiffness per unit area (N/m^3)
    double q_E = 0.0;    // trap centre (m)
    std::optional<Cantilever> cantilever;
    std::optional<Laser> laser;
};

/// Dimensionless control set plus the two dimensional anchors (Delta, omega0)
/// needed to convert back. Omega = 2*omega0/Delta and xi = 4*pi*chi0*k_N0
/// hold exactly by construction.
struct NondimParams {
    double xi = 0.0;
    double Omega = 0.0;
    double Gamma = 0.0;
    double omega_ho = 0.0;
    double x_E = 0.0;
    double Delta = 0.0;   // 1/s
    double omega0 = 0.0;  // rad/s
};

/// Delta = sqrt(g0^2 omega0^3 / (pi^2 M0 c^3)) with omega0 = c k_N0, then
/// xi, Omega, Gamma = gamma/(Delta M0), omega_ho = sqrt(k_ho/(Delta^2 M0)),
/// x_E = k_N0 q_E. Throws if a required field is missing or non-positive.
NondimParams nondimensionalize(const PhysicalParams& p);

/// Inverse of nondimensionalize. The dimensionless set fixes g0^2/M0 only,
/// so the mass per unit area must be supplied as the anchor.
PhysicalParams redimensionalize(const NondimParams& nd, double M0);

/// Dimensional radiation-force prefactor (g0 omega0 / (pi c))^2 in N/m^2;
/// equals M0 Delta^2 / k_N0 exactly, which ties the dimensional equation of
/// motion to the dimensionless one.
double radiation_force_prefactor(const PhysicalParams& p);

/// Cantilever + laser -> sheet parameters: effective mass M = K/omega1^2,
/// M0 = M/(thinning * L * W) (default thinning 100 so the sheet obeys the
/// thin-mirror condition), k_N0 = 2*pi/lambda, gamma = M0*Gamma1,
/// k_ho = M0*omega1^2, and chi0 from the quoted reflectivity when present.
struct PipelineReport {
    PhysicalParams physical;
    double effective_mass = 0.0;   // kg
    double thinning_factor = 0.0;
    std::vector<std::string> lines;     // human-readable derivation, with units
    std::vector<std::string> warnings;  // model-applicability notes
};
PipelineReport cantilever_pipeline(const Cantilever& c, const Laser& l,
                                   double thinning_factor = 100.0);

/// Laser-power bound on the field strength,
///   g0 <= (2*pi/omega0) sqrt(c P_max / (L W)),
/// from the time-averaged Poynting flux of the incident plane wave.
double g0_bound(const Laser& l, const Cantilever& c);

/// Full derivation report for a parameter set: every intermediate with units.
std::string derivation_report(const PhysicalParams& p);

}  // namespace mirrorlab::params

#endif  // MIRRORLAB_PARAMS_HPP
