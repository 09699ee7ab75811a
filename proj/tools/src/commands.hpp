#ifndef MIRRORLAB_TOOLS_COMMANDS_HPP
#define MIRRORLAB_TOOLS_COMMANDS_HPP

#include <string>

#include "run_config.hpp"

namespace mirrorlab::tool {

// exit codes: 0 success, 2 configuration error, 3 numerical diagnostic
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

int cmd_params(const RunConfig& cfg, const std::string& out_dir);
int cmd_modes(const RunConfig& cfg, const std::string& out_dir);
int cmd_potential(const RunConfig& cfg, const std::string& out_dir);
int cmd_simulate(const RunConfig& cfg, const std::string& out_dir);
int cmd_fixed_points(const RunConfig& cfg, const std::string& out_dir);
int cmd_validity(const RunConfig& cfg, const std::string& out_dir);
int cmd_sweep(const RunConfig& cfg, const std::string& out_dir, int jobs);
int cmd_figure(const std::string& name, const std::string& out_dir);

}  // namespace mirrorlab::tool

#endif  // MIRRORLAB_TOOLS_COMMANDS_HPP
