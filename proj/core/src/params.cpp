#include "mirrorlab/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mirrorlab::params {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double c = speed_of_light;

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw std::invalid_argument(std::string(name) + " must be finite and > 0");
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

NondimParams nondimensionalize(const PhysicalParams& p) {
    require_positive(p.g0, "g0");
    require_positive(p.M0, "M0");
    require_positive(p.k_N0, "k_N0");
    if (!std::isfinite(p.chi0) || p.chi0 < 0.0)
        throw std::invalid_argument("chi0 must be finite and >= 0");
    if (p.gamma < 0.0 || p.k_ho < 0.0 || p.q_E < 0.0)
        throw std::invalid_argument("gamma, k_ho, q_E must be >= 0");

    NondimParams nd;
    nd.omega0 = c * p.k_N0;
    nd.Delta = std::sqrt(p.g0 * p.g0 * nd.omega0 * nd.omega0 * nd.omega0 /
                         (kPi * kPi * p.M0 * c * c * c));
    nd.xi = 4.0 * kPi * p.chi0 * p.k_N0;
    nd.Omega = 2.0 * nd.omega0 / nd.Delta;
    nd.Gamma = p.gamma / (nd.Delta * p.M0);
    nd.omega_ho = std::sqrt(p.k_ho / p.M0) / nd.Delta;
    nd.x_E = p.k_N0 * p.q_E;
    return nd;
}

PhysicalParams redimensionalize(const NondimParams& nd, double M0) {
    require_positive(M0, "M0");
    require_positive(nd.Delta, "Delta");
    require_positive(nd.omega0, "omega0");

    PhysicalParams p;
    p.M0 = M0;
    p.k_N0 = nd.omega0 / c;
    p.chi0 = nd.xi / (4.0 * kPi * p.k_N0);
    p.g0 = kPi * nd.Delta * std::sqrt(M0 * c * c * c / (nd.omega0 * nd.omega0 * nd.omega0));
    p.gamma = nd.Gamma * nd.Delta * M0;
    p.k_ho = nd.omega_ho * nd.omega_ho * nd.Delta * nd.Delta * M0;
    p.q_E = nd.x_E / p.k_N0;
    return p;
}

double radiation_force_prefactor(const PhysicalParams& p) {
    require_positive(p.g0, "g0");
    require_positive(p.k_N0, "k_N0");
    const double omega0 = c * p.k_N0;
    const double root = p.g0 * omega0 / (kPi * c);
    return root * root;
}

PipelineReport cantilever_pipeline(const Cantilever& cant, const Laser& laser,
                                   double thinning_factor) {
    require_positive(cant.length, "cantilever length");
    require_positive(cant.width, "cantilever width");
    require_positive(cant.thickness, "cantilever thickness");
    require_positive(cant.spring_constant, "spring constant");
    require_positive(cant.mode_frequency, "mode frequency");
    require_positive(laser.wavelength, "laser wavelength");
    require_positive(thinning_factor, "thinning factor");
    if (cant.damping_rate < 0.0) throw std::invalid_argument("damping rate must be >= 0");

    PipelineReport rep;
    rep.thinning_factor = thinning_factor;
    rep.effective_mass = cant.spring_constant / (cant.mode_frequency * cant.mode_frequency);

    PhysicalParams& p = rep.physical;
    p.M0 = rep.effective_mass / (thinning_factor * cant.length * cant.width);
    p.k_N0 = 2.0 * kPi / laser.wavelength;
    p.gamma = p.M0 * cant.damping_rate;
    p.k_ho = p.M0 * cant.mode_frequency * cant.mode_frequency;
    if (laser.reflectivity > 0.0) {
        if (laser.reflectivity >= 1.0)
            throw std::invalid_argument("reflectivity must be < 1");
        const double xi = 2.0 * std::sqrt(laser.reflectivity / (1.0 - laser.reflectivity));
        p.chi0 = xi / (4.0 * kPi * p.k_N0);
    }
    p.cantilever = cant;
    p.laser = laser;

    const double omega0 = c * p.k_N0;
    rep.lines.push_back("effective mass M = K_ho/omega_1^2 = " + fmt(rep.effective_mass) + " kg");
    rep.lines.push_back("thinning factor = " + fmt(thinning_factor) +
                        " (sheet thickness scaled down to satisfy the thin-mirror condition)");
    rep.lines.push_back("mass per unit area M0 = M/(thinning*L*W) = " + fmt(p.M0) + " kg/m^2");
    rep.lines.push_back("wave number k_N0 = 2 pi/lambda = " + fmt(p.k_N0) + " 1/m");
    rep.lines.push_back("field angular frequency omega0 = c k_N0 = " + fmt(omega0) + " rad/s");
    rep.lines.push_back("friction per unit area gamma = M0*Gamma_1 = " + fmt(p.gamma) + " N s/m^3");
    rep.lines.push_back("trap stiffness per unit area k_ho = M0*omega_1^2 = " + fmt(p.k_ho) + " N/m^3");
    if (p.chi0 > 0.0) {
        rep.lines.push_back("coupling length chi0 (from R = " + fmt(laser.reflectivity) +
                            ") = " + fmt(p.chi0) + " m");
    }
    if (laser.max_power > 0.0) {
        rep.lines.push_back("laser-power bound g0 <= " + fmt(g0_bound(laser, cant)) + " N^1/2");
    }

    const double effective_thickness = cant.thickness / thinning_factor;
    if (effective_thickness > laser.wavelength / 10.0) {
        rep.warnings.push_back(
            "thin-mirror condition marginal: effective thickness " + fmt(effective_thickness) +
            " m exceeds lambda/10 = " + fmt(laser.wavelength / 10.0) + " m");
    }
    return rep;
}

double g0_bound(const Laser& laser, const Cantilever& cant) {
    require_positive(cant.length, "cantilever length");
    require_positive(cant.width, "cantilever width");
    require_positive(laser.wavelength, "laser wavelength");
    if (!std::isfinite(laser.max_power) || laser.max_power < 0.0)
        throw std::invalid_argument("max power must be finite and >= 0");
    if (laser.max_power == 0.0) return 0.0;
    const double omega0 = c * 2.0 * kPi / laser.wavelength;
    return (2.0 * kPi / omega0) *
           std::sqrt(c * laser.max_power / (cant.length * cant.width));
}

std::string derivation_report(const PhysicalParams& p) {
    const NondimParams nd = nondimensionalize(p);
    std::ostringstream os;
    os.precision(9);
    os << "inputs:\n";
    os << "  chi0  = " << p.chi0 << " m\n";
    os << "  M0    = " << p.M0 << " kg/m^2\n";
    os << "  k_N0  = " << p.k_N0 << " 1/m\n";
    os << "  g0    = " << p.g0 << " N^1/2\n";
    os << "  gamma = " << p.gamma << " N s/m^3\n";
    os << "  k_ho  = " << p.k_ho << " N/m^3\n";
    os << "  q_E   = " << p.q_E << " m\n";
    os << "derived:\n";
    os << "  omega0   = c k_N0 = " << nd.omega0 << " rad/s\n";
    os << "  Delta    = sqrt(g0^2 omega0^3/(pi^2 M0 c^3)) = " << nd.Delta << " 1/s\n";
    os << "  force prefactor (g0 omega0/(pi c))^2 = " << radiation_force_prefactor(p) << " N/m^2\n";
    os << "dimensionless:\n";
    os << "  xi       = 4 pi chi0 k_N0 = " << nd.xi << "\n";
    os << "  Omega    = 2 omega0/Delta = " << nd.Omega << "\n";
    os << "  Gamma    = gamma/(Delta M0) = " << nd.Gamma << "\n";
    os << "  omega_ho = sqrt(k_ho/M0)/Delta = " << nd.omega_ho << "\n";
    os << "  x_E      = k_N0 q_E = " << nd.x_E << "\n";
    return os.str();
}

}  // namespace mirrorlab::params
