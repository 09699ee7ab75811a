#ifndef MIRRORLAB_TOOLS_RUN_CONFIG_HPP
#define MIRRORLAB_TOOLS_RUN_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorlab/dynamics.hpp"

namespace mirrorlab::tool {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key = value text with optional [section] headers; section names
/// prefix the keys ("scenario.kind"). '#' starts a comment. Later
/// assignments and --set overrides win.
class RunConfig {
  public:
    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    void apply_override(const std::string& key_equals_value);  // "key=value"

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Comma list ("1,2,3") or linspace ("lo:hi:n") of doubles.
    std::vector<double> get_list(const std::string& key) const;

    /// All keys in insertion-independent (sorted) order, for provenance
    /// headers and deterministic serialization.
    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

/// scenario.kind = radiation | friction | trap, scenario.treatment = rwa |
/// full, plus params.xi / params.omega / params.gamma / params.omega_ho and
/// the trap centre params.x_e or params.x_e_well (x_E = n*pi + 1/xi).
dynamics::Scenario scenario_from_config(const RunConfig& cfg);

/// initial.x0 / initial.v0, or initial.x0_well with initial.x0_at in
/// {resonance, minimum, maximizer, trap_centre, saddle}.
dynamics::State initial_state_from_config(const RunConfig& cfg, const dynamics::Scenario& sc);

dynamics::Tolerances tolerances_from_config(const RunConfig& cfg);

}  // namespace mirrorlab::tool

#endif  // MIRRORLAB_TOOLS_RUN_CONFIG_HPP
