#ifndef MIRRORLAB_TOOLS_FIGURES_HPP
#define MIRRORLAB_TOOLS_FIGURES_HPP

#include <string>
#include <vector>

namespace mirrorlab::tool {

/// Frozen parameter sets reproducing the reference plots as CSV datasets,
/// one entry per figure (1-12), plus a gnuplot sidecar script per figure.
/// Figure names accepted: "1".."12" and the lettered panels where they
/// exist ("3a", "8b", ...) to emit a single panel.
struct FigureOutput {
    std::vector<std::string> files;  // CSV paths written
    std::string script;              // gnuplot sidecar path (may be empty)
};

bool is_known_figure(const std::string& name);
FigureOutput write_figure(const std::string& name, const std::string& out_dir);
std::vector<std::string> figure_names();

}  // namespace mirrorlab::tool

#endif  // MIRRORLAB_TOOLS_FIGURES_HPP
