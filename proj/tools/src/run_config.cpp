#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mirrorlab/potential.hpp"

namespace mirrorlab::tool {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + raw + "'");
    }
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: empty key at line " + std::to_string(lineno));
        if (!section.empty()) key = section + "." + key;
        cfg.values_[key] = value;
    }
    return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

void RunConfig::apply_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects key=value, got '" + kv + "'");
    values_[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(key, it->second);
}

double RunConfig::require_double(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: missing required key '" + key + "'");
    return parse_double(key, it->second);
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, fallback);
    if (v != std::floor(v)) throw ConfigError("config: key '" + key + "' must be an integer");
    return static_cast<int>(v);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "off" || v == "0" || v == "no") return false;
    throw ConfigError("config: key '" + key + "' must be boolean, got '" + v + "'");
}

std::vector<double> RunConfig::get_list(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return {};
    const std::string& raw = it->second;
    if (trim(raw).empty()) return {};
    std::vector<double> out;
    if (raw.find(':') != std::string::npos) {
        // lo:hi:n linspace
        std::istringstream ss(raw);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
            throw ConfigError("config: key '" + key + "' expects lo:hi:n");
        const double lo = parse_double(key, trim(a));
        const double hi = parse_double(key, trim(b));
        const int n = static_cast<int>(parse_double(key, trim(c)));
        if (n < 1) throw ConfigError("config: key '" + key + "' needs n >= 1 points");
        for (int i = 0; i < n; ++i)
            out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
        return out;
    }
    std::istringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    return out;
}

dynamics::Scenario scenario_from_config(const RunConfig& cfg) {
    const std::string kind = cfg.get_string("scenario.kind", "radiation");
    const std::string treat = cfg.get_string("scenario.treatment", "rwa");
    dynamics::Treatment t;
    if (treat == "rwa") t = dynamics::Treatment::RWA;
    else if (treat == "full") t = dynamics::Treatment::FullDriven;
    else throw ConfigError("config: scenario.treatment must be rwa or full");

    // exactly one parameter source: dimensionless params.* or a physical.*
    // set that is converted on the way in
    const bool physical_source = cfg.has("physical.g0");
    if (physical_source && cfg.has("params.xi"))
        throw ConfigError("config: give either params.* or the physical.* set, not both");
    double xi, Omega, Gamma_phys = 0.0, omega_ho_phys = 0.0, x_E_phys = 0.0;
    if (physical_source) {
        params::PhysicalParams phys;
        phys.chi0 = cfg.require_double("physical.chi0");
        phys.M0 = cfg.require_double("physical.m0");
        phys.k_N0 = cfg.require_double("physical.k_n0");
        phys.g0 = cfg.require_double("physical.g0");
        phys.gamma = cfg.get_double("physical.gamma", 0.0);
        phys.k_ho = cfg.get_double("physical.k_ho", 0.0);
        phys.q_E = cfg.get_double("physical.q_e", 0.0);
        params::NondimParams nd;
        try {
            nd = params::nondimensionalize(phys);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        xi = nd.xi;
        Omega = nd.Omega;
        Gamma_phys = nd.Gamma;
        omega_ho_phys = nd.omega_ho;
        x_E_phys = nd.x_E;
        try {
            if (kind == "radiation")
                return dynamics::Scenario::radiation(xi, Omega, t);
            if (kind == "friction")
                return dynamics::Scenario::friction(xi, Omega, Gamma_phys, t);
            if (kind == "trap")
                return dynamics::Scenario::harmonic_trap(xi, Omega, Gamma_phys, omega_ho_phys,
                                                         x_E_phys, t);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        throw ConfigError("config: scenario.kind must be radiation, friction or trap");
    }

    xi = cfg.require_double("params.xi");
    Omega = cfg.get_double("params.omega", 0.0);
    try {
        if (kind == "radiation") {
            return dynamics::Scenario::radiation(xi, Omega, t);
        } else if (kind == "friction") {
            return dynamics::Scenario::friction(xi, Omega, cfg.require_double("params.gamma"), t);
        } else if (kind == "trap") {
            double x_E;
            if (cfg.has("params.x_e")) {
                x_E = cfg.require_double("params.x_e");
            } else if (cfg.has("params.x_e_well")) {
                x_E = cfg.get_int("params.x_e_well", 0) * kPi + 1.0 / xi;
            } else {
                throw ConfigError("config: trap needs params.x_e or params.x_e_well");
            }
            return dynamics::Scenario::harmonic_trap(xi, Omega,
                                                     cfg.get_double("params.gamma", 0.0),
                                                     cfg.require_double("params.omega_ho"), x_E, t);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    throw ConfigError("config: scenario.kind must be radiation, friction or trap");
}

dynamics::State initial_state_from_config(const RunConfig& cfg, const dynamics::Scenario& sc) {
    dynamics::State s;
    s.tau = cfg.get_double("initial.tau0", 0.0);
    s.v = cfg.get_double("initial.v0", 0.0);
    if (cfg.has("initial.x0")) {
        s.x = cfg.require_double("initial.x0");
        return s;
    }
    const int well = cfg.get_int("initial.x0_well", 0);
    const std::string at = cfg.get_string("initial.x0_at", "resonance");
    const double xi = sc.p.xi;
    if (at == "resonance") {
        s.x = well * kPi + 1.0 / xi;
    } else if (at == "minimum") {
        s.x = well * kPi + potential::well_minimum_offset({xi});
    } else if (at == "maximizer") {
        s.x = well * kPi + potential::extrema_table({xi}, 1).wells[0].f_max_x;
    } else if (at == "saddle") {
        s.x = well * kPi;
    } else if (at == "trap_centre") {
        s.x = sc.p.x_E;
    } else {
        throw ConfigError("config: initial.x0_at must be resonance, minimum, maximizer, "
                          "saddle or trap_centre");
    }
    return s;
}

dynamics::Tolerances tolerances_from_config(const RunConfig& cfg) {
    dynamics::Tolerances tol;
    tol.rel = cfg.get_double("integration.tol_rel", tol.rel);
    tol.abs = cfg.get_double("integration.tol_abs", tol.abs);
    return tol;
}

}  // namespace mirrorlab::tool
