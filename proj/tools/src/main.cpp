#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "commands.hpp"
#include "csv.hpp"
#include "figures.hpp"
#include "run_config.hpp"

namespace {

using namespace mirrorlab::tool;

struct GlobalOptions {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    double tol_rel = 0.0;
    double tol_abs = 0.0;
    double tau_end = 0.0;
    int jobs = 1;
};

RunConfig load_config(const GlobalOptions& g) {
    RunConfig cfg = g.config_path.empty() ? RunConfig{} : RunConfig::from_file(g.config_path);
    for (const auto& kv : g.sets) cfg.apply_override(kv);
    if (g.tol_rel > 0.0) cfg.set("integration.tol_rel", format_g17(g.tol_rel));
    if (g.tol_abs > 0.0) cfg.set("integration.tol_abs", format_g17(g.tol_abs));
    if (g.tau_end > 0.0) cfg.set("integration.tau_end", format_g17(g.tau_end));
    return cfg;
}

std::string resolve_out_dir(const GlobalOptions& g) {
    if (!g.out_dir.empty()) return g.out_dir;
    if (const char* env = std::getenv("MIRRORLAB_OUT")) return env;
    return ".";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mirrorlab: classical dynamics of a thin laser-driven cavity mirror"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "key = value configuration file")
        ->expected(1);
    app.add_option("--set", g.sets, "override a config key (repeatable), e.g. params.xi=50");
    app.add_option("--out", g.out_dir, "output directory (default $MIRRORLAB_OUT or .)");
    app.add_option("--tol-rel", g.tol_rel, "integrator relative tolerance");
    app.add_option("--tol-abs", g.tol_abs, "integrator absolute tolerance");
    app.add_option("--tau-end", g.tau_end, "integration end time");
    app.add_option("--jobs", g.jobs, "parallel sweep workers");

    auto* params = app.add_subcommand("params", "derive the dimensionless control set");
    auto* modes = app.add_subcommand("modes", "cavity mode amplitude and resonances");
    auto* potential = app.add_subcommand("potential", "radiation-pressure force and potential");
    auto* simulate = app.add_subcommand("simulate", "integrate one scenario to CSV");
    auto* fixed = app.add_subcommand("fixed-points", "fixed points and their classification");
    auto* validity = app.add_subcommand("validity", "model-validity audit of a trajectory");
    auto* sweep = app.add_subcommand("sweep", "grid sweep with per-point classification");
    auto* figure = app.add_subcommand("figure", "reproduce a reference figure as CSV");
    std::string figure_name;
    figure->add_option("name", figure_name, "figure number (1-12, panels like 3a allowed)")
        ->required();

    // let global flags appear after the subcommand as well
    for (auto* sub : {params, modes, potential, simulate, fixed, validity, sweep, figure})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        const std::string out_dir = resolve_out_dir(g);
        if (figure->parsed()) return cmd_figure(figure_name, out_dir);
        const RunConfig cfg = load_config(g);
        if (params->parsed()) return cmd_params(cfg, out_dir);
        if (modes->parsed()) return cmd_modes(cfg, out_dir);
        if (potential->parsed()) return cmd_potential(cfg, out_dir);
        if (simulate->parsed()) return cmd_simulate(cfg, out_dir);
        if (fixed->parsed()) return cmd_fixed_points(cfg, out_dir);
        if (validity->parsed()) return cmd_validity(cfg, out_dir);
        if (sweep->parsed()) return cmd_sweep(cfg, out_dir, g.jobs);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical diagnostic: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
