#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <thread>

#include "csv.hpp"
#include "figures.hpp"
#include "mirrorlab/analysis.hpp"
#include "mirrorlab/dynamics.hpp"
#include "mirrorlab/modes.hpp"
#include "mirrorlab/params.hpp"
#include "mirrorlab/potential.hpp"

namespace mirrorlab::tool {

namespace {

constexpr double kPi = std::numbers::pi;

std::string join(const std::string& dir, const std::string& file) {
    if (dir.empty() || dir == ".") return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

const char* kind_name(analysis::FixedPointKind k) {
    switch (k) {
        case analysis::FixedPointKind::Saddle: return "saddle";
        case analysis::FixedPointKind::StableSpiral: return "stable_spiral";
        case analysis::FixedPointKind::StableNode: return "stable_node";
        case analysis::FixedPointKind::Center: return "center";
    }
    return "?";
}

void print_condition_table(const std::vector<analysis::ConditionEntry>& entries) {
    for (const auto& e : entries) {
        std::printf("  %-62s lhs=%-12.5g rhs=%-12.5g margin=%-10.4g %s\n", e.name.c_str(),
                    e.lhs, e.rhs, e.margin, e.pass ? "pass" : "FAIL");
    }
}

}  // namespace

int cmd_params(const RunConfig& cfg, const std::string& out_dir) {
    std::string report;
    params::PhysicalParams phys;

    if (cfg.has("cantilever.length")) {
        params::Cantilever cant;
        cant.length = cfg.require_double("cantilever.length");
        cant.width = cfg.require_double("cantilever.width");
        cant.thickness = cfg.require_double("cantilever.thickness");
        cant.spring_constant = cfg.require_double("cantilever.spring_constant");
        cant.mode_frequency = cfg.require_double("cantilever.mode_frequency");
        cant.damping_rate = cfg.get_double("cantilever.damping_rate", 0.0);
        params::Laser laser;
        laser.wavelength = cfg.require_double("laser.wavelength");
        laser.max_power = cfg.get_double("laser.max_power", 0.0);
        laser.reflectivity = cfg.get_double("laser.reflectivity", 0.0);
        const double thinning = cfg.get_double("cantilever.thinning_factor", 100.0);

        const auto rep = params::cantilever_pipeline(cant, laser, thinning);
        phys = rep.physical;
        for (const auto& line : rep.lines) report += line + "\n";
        for (const auto& warn : rep.warnings) report += "warning: " + warn + "\n";
    }

    // direct physical keys override / complete the pipeline output
    if (cfg.has("physical.chi0")) phys.chi0 = cfg.require_double("physical.chi0");
    if (cfg.has("physical.m0")) phys.M0 = cfg.require_double("physical.m0");
    if (cfg.has("physical.k_n0")) phys.k_N0 = cfg.require_double("physical.k_n0");
    if (cfg.has("physical.g0")) phys.g0 = cfg.require_double("physical.g0");
    if (cfg.has("physical.gamma")) phys.gamma = cfg.require_double("physical.gamma");
    if (cfg.has("physical.k_ho")) phys.k_ho = cfg.require_double("physical.k_ho");
    if (cfg.has("physical.q_e")) phys.q_E = cfg.require_double("physical.q_e");

    if (phys.g0 > 0.0 && phys.M0 > 0.0 && phys.k_N0 > 0.0) {
        report += params::derivation_report(phys);
    } else if (report.empty()) {
        throw ConfigError("params: provide [cantilever]+[laser] keys or the [physical] set "
                          "(chi0, m0, k_n0, g0)");
    } else {
        report += "note: set physical.g0 to derive the dimensionless control set\n";
    }

    std::cout << report;
    if (!out_dir.empty() && out_dir != ".") {
        std::ofstream f(join(out_dir, "params_report.txt"));
        f << report;
    }
    return kExitOk;
}

int cmd_modes(const RunConfig& cfg, const std::string& out_dir) {
    modes::ModeParams p;
    p.chi0 = cfg.require_double("modes.chi0");
    p.k = cfg.require_double("modes.k");
    const int n_max = cfg.get_int("modes.n_max", 4);
    const int per_period = cfg.get_int("modes.samples_per_period", 2000);

    CsvWriter profile(join(out_dir, "mode_amplitude.csv"));
    profile.comments(cfg.values());
    profile.header({"q", "L", "delta"});
    const int total = per_period * n_max;
    for (int i = 1; i <= total; ++i) {
        const double q = (kPi / p.k) * static_cast<double>(i) / per_period;
        const auto m = modes::eval_mode(q, p);
        profile.row({q, m.L, m.delta});
    }

    const double xi = p.xi();
    const auto tr = modes::transmissivity(xi);
    std::printf("xi = %.6g  T = %.6g  R = %.6g\n", xi, tr.T, tr.R);

    if (xi > 0.0) {
        const auto table = modes::resonance_table(p, n_max);
        CsvWriter res(join(out_dir, "mode_resonances.csv"));
        res.comments(cfg.values());
        if (!table.analytic_seeds)
            res.comment("warning: xi < 5, extremizers located numerically without seeds");
        res.header({"n", "q_max", "q_min", "peak_L", "hwhm_kq", "hwhm_q"});
        for (int n = 0; n < n_max; ++n) {
            res.row({static_cast<double>(n), table.maximizers_q[static_cast<std::size_t>(n)],
                     table.minimizers_q[static_cast<std::size_t>(n)],
                     table.peak_values[static_cast<std::size_t>(n)], table.hwhm_kq,
                     table.hwhm_q});
        }
        std::printf("wrote mode_amplitude.csv and mode_resonances.csv\n");
    } else {
        std::printf("wrote mode_amplitude.csv (transparent mirror: no resonances)\n");
    }
    return kExitOk;
}

int cmd_potential(const RunConfig& cfg, const std::string& out_dir) {
    const double xi = cfg.require_double("params.xi");
    const potential::PotentialParams p{xi};
    const double x_min = cfg.get_double("potential.x_min", 0.0);
    const double x_max = cfg.get_double("potential.x_max", 3.0 * kPi);
    const int samples = cfg.get_int("potential.samples", 6000);
    const int n_max = cfg.get_int("potential.n_max", 4);

    CsvWriter csv(join(out_dir, "potential.csv"));
    csv.comments(cfg.values());
    const bool with_sawtooth = xi > 0.0;
    if (with_sawtooth)
        csv.header({"x", "v_rwa", "f_rwa", "v_sawtooth", "f_piecewise"});
    else
        csv.header({"x", "v_rwa", "f_rwa"});
    for (int i = 0; i <= samples; ++i) {
        const double x = x_min + (x_max - x_min) * i / samples;
        if (with_sawtooth)
            csv.row({x, potential::v_rwa(x, p), potential::f_rwa(x, p),
                     potential::v_sawtooth(x, p), potential::f_piecewise(x, p)});
        else
            csv.row({x, potential::v_rwa(x, p), potential::f_rwa(x, p)});
    }

    if (xi > 0.0) {
        const auto table = potential::extrema_table(p, n_max);
        CsvWriter ext(join(out_dir, "potential_extrema.csv"));
        ext.comments(cfg.values());
        if (!table.analytic_seeds)
            ext.comment("warning: xi < 5, extrema located numerically without seeds");
        ext.header({"n", "v_max_x", "v_max", "f_max_x", "f_max", "v_min_x", "v_min",
                    "f_min_x", "f_min"});
        for (const auto& w : table.wells)
            ext.row({static_cast<double>(w.n), w.v_max_x, w.v_max, w.f_max_x, w.f_max,
                     w.v_min_x, w.v_min, w.f_min_x, w.f_min});
        std::printf("wrote potential.csv and potential_extrema.csv\n");
    } else {
        std::printf("wrote potential.csv (flat potential at xi = 0)\n");
    }
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
    const auto sc = scenario_from_config(cfg);
    const auto ic = initial_state_from_config(cfg, sc);
    const double tau_end = cfg.require_double("integration.tau_end");
    const auto tol = tolerances_from_config(cfg);
    const int samples = cfg.get_int("integration.samples", 2000);

    const auto traj = dynamics::integrate(sc, ic, tau_end, tol);

    const bool rwa = sc.treatment == dynamics::Treatment::RWA;
    const std::string energy_mode = cfg.get_string("output.energy", "auto");
    const bool with_energy = rwa && energy_mode != "off";
    const bool with_validity = cfg.get_bool("output.validity_cols", false);

    CsvWriter csv(join(out_dir, cfg.get_string("output.file", "trajectory.csv")));
    csv.comments(cfg.values());
    csv.comment("status = " + std::string(traj.status == dynamics::IntegrationStatus::Completed
                                              ? "completed"
                                              : traj.diagnostic.c_str()));
    std::vector<std::string> cols{"tau", "x", "v"};
    if (with_energy) cols.push_back("energy");
    if (with_validity) {
        cols.push_back("qdot_over_c");
        cols.push_back("qddot_over_comega0");
    }
    csv.header(cols);
    const double Om = sc.p.Omega;
    for (const auto& s : traj.sample(static_cast<std::size_t>(samples))) {
        std::vector<double> row{s.tau, s.x, s.v};
        if (with_energy) row.push_back(dynamics::energy(s, sc));
        if (with_validity) {
            row.push_back(2.0 / Om * s.v);
            row.push_back(4.0 / (Om * Om) * dynamics::rhs(s, sc));
        }
        csv.row(row);
    }

    std::printf("steps = %zu, span = [%.6g, %.6g]\n", traj.step_count(), traj.tau_begin(),
                traj.tau_end());
    if (const auto pe = dynamics::period_estimate(traj))
        std::printf("period estimate = %.8g (stddev %.2g, %d crossings)\n", pe->mean,
                    pe->stddev, pe->crossings);
    if (traj.status != dynamics::IntegrationStatus::Completed) {
        std::fprintf(stderr, "numerical diagnostic: %s\n", traj.diagnostic.c_str());
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_fixed_points(const RunConfig& cfg, const std::string& out_dir) {
    auto sc = scenario_from_config(cfg);
    if (sc.treatment != dynamics::Treatment::RWA)
        throw ConfigError("fixed-points: scenario.treatment must be rwa");
    const int n_lo = cfg.get_int("wells.lo", 0);
    const int n_hi = cfg.get_int("wells.hi", std::max(n_lo, 3));

    const auto fps = analysis::fixed_points(sc, n_lo, n_hi);
    CsvWriter csv(join(out_dir, "fixed_points.csv"));
    csv.comments(cfg.values());
    csv.header({"x", "kind", "re_lambda1", "im_lambda1", "re_lambda2", "im_lambda2",
                "stable_slope", "unstable_slope", "cubic_seed"});
    const double nan = std::nan("");
    for (const auto& fp : fps) {
        csv.row({fp.x, static_cast<double>(static_cast<int>(fp.kind)),
                 fp.eigenvalues[0].real(), fp.eigenvalues[0].imag(),
                 fp.eigenvalues[1].real(), fp.eigenvalues[1].imag(),
                 fp.manifold_slopes ? fp.manifold_slopes->stable : nan,
                 fp.manifold_slopes ? fp.manifold_slopes->unstable : nan,
                 fp.cubic_seed ? *fp.cubic_seed : nan});
        std::printf("x = %-14.8g %-14s lambda = (%.6g%+.6gi, %.6g%+.6gi)\n", fp.x,
                    kind_name(fp.kind), fp.eigenvalues[0].real(), fp.eigenvalues[0].imag(),
                    fp.eigenvalues[1].real(), fp.eigenvalues[1].imag());
        if (fp.cubic_seed)
            std::printf("  cubic seed offset = %.8g (exact offset %.8g)\n", *fp.cubic_seed,
                        fp.x - sc.p.x_E);
    }
    if (fps.empty()) std::printf("no fixed points found in the requested range\n");
    return kExitOk;
}

int cmd_validity(const RunConfig& cfg, const std::string& out_dir) {
    const auto sc = scenario_from_config(cfg);
    const auto ic = initial_state_from_config(cfg, sc);
    const double tau_end = cfg.require_double("integration.tau_end");
    const auto tol = tolerances_from_config(cfg);
    const auto traj = dynamics::integrate(sc, ic, tau_end, tol);
    if (traj.status != dynamics::IntegrationStatus::Completed) {
        std::fprintf(stderr, "numerical diagnostic: %s\n", traj.diagnostic.c_str());
        return kExitNumerical;
    }

    std::optional<double> tau_from;
    if (cfg.has("integration.tau_from")) tau_from = cfg.require_double("integration.tau_from");
    const double margin = cfg.get_double("validity.margin_factor", 10.0);
    const auto rep = analysis::validity_report(traj, sc, tau_from, margin);

    std::printf("max |x'| = %.6g  max |x''| = %.6g\n", rep.max_abs_v, rep.max_abs_a);
    std::printf("max |qdot/c| = %.6g  max |qddot/(c omega0)| = %.6g\n", rep.max_qdot_over_c,
                rep.max_qddot_over_c_omega0);
    std::printf("conditions (pass means lhs < rhs/%g):\n", rep.margin_factor);
    print_condition_table(rep.conditions);
    std::printf("rotating-wave regime:\n");
    print_condition_table(rep.rwa_regime);
    std::printf("physical: %s   all sufficient bounds: %s\n", rep.physical_ok ? "PASS" : "FAIL",
                rep.all_sufficient_ok ? "PASS" : "FAIL");

    CsvWriter csv(join(out_dir, "validity_report.csv"));
    csv.comments(cfg.values());
    csv.header({"section", "name", "lhs", "rhs", "margin", "pass"});
    for (const auto& e : rep.conditions)
        csv.raw_row("conditions," + e.name + "," + format_g17(e.lhs) + "," + format_g17(e.rhs) +
                    "," + format_g17(e.margin) + "," + (e.pass ? "1" : "0"));
    for (const auto& e : rep.rwa_regime)
        csv.raw_row("rwa_regime," + e.name + "," + format_g17(e.lhs) + "," + format_g17(e.rhs) +
                    "," + format_g17(e.margin) + "," + (e.pass ? "1" : "0"));
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir, int jobs) {
    static const std::vector<std::string> axes{"xi", "omega", "gamma", "omega_ho", "v0"};
    std::vector<std::pair<std::string, std::vector<double>>> grid;
    bool empty_axis = false;
    for (const auto& axis : axes) {
        if (!cfg.has("sweep." + axis)) continue;
        auto vals = cfg.get_list("sweep." + axis);
        if (vals.empty()) empty_axis = true;
        grid.emplace_back(axis, std::move(vals));
    }

    CsvWriter csv(join(out_dir, "sweep.csv"));
    csv.comments(cfg.values());
    csv.comment("status: 0 completed, 1 half-line violation, 2 step underflow");
    csv.comment("attractor: 0 saddle, 1 stable spiral, 2 stable node, 3 center, -1 n/a");
    csv.comment("rwa_distance: sup |x - x_rwa| against the rotating-wave twin (driven runs)");
    csv.header({"index", "xi", "omega", "gamma", "omega_ho", "v0", "status", "final_x",
                "final_v", "settled_well", "hops", "periodic", "validity_ok", "attractor",
                "rwa_distance"});
    if (grid.empty() || empty_axis) return kExitOk;  // empty grid: header only

    std::size_t total = 1;
    for (const auto& [_, vals] : grid) total *= vals.size();

    struct Row {
        std::vector<double> values;
    };
    std::vector<Row> rows(total);

    auto run_point = [&](std::size_t index) {
        RunConfig point = cfg;
        std::size_t rest = index;
        std::map<std::string, double> coords;
        for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
            const auto& [axis, vals] = *it;
            coords[axis] = vals[rest % vals.size()];
            rest /= vals.size();
        }
        for (const auto& [axis, v] : coords) {
            if (axis == "v0") point.set("initial.v0", format_g17(v));
            else point.set("params." + axis, format_g17(v));
        }
        const auto sc = scenario_from_config(point);
        const auto ic = initial_state_from_config(point, sc);
        const double tau_end = point.require_double("integration.tau_end");
        const auto tol = tolerances_from_config(point);
        const auto traj = dynamics::integrate(sc, ic, tau_end, tol);

        const auto samples = traj.sample(4096);
        int hops = 0;
        long prev_well = std::lround(std::floor(samples.front().x / kPi));
        for (const auto& s : samples) {
            const long w = std::lround(std::floor(s.x / kPi));
            if (w != prev_well) ++hops;
            prev_well = w;
        }
        const auto end = traj.back();
        const bool periodic =
            traj.status == dynamics::IntegrationStatus::Completed &&
            dynamics::period_estimate(traj.tail(0.5 * (traj.tau_begin() + traj.tau_end())))
                .has_value();
        bool validity_ok = false;
        if (traj.status == dynamics::IntegrationStatus::Completed)
            validity_ok = analysis::validity_report(traj, sc).physical_ok;

        // classification of the attractor in the settled well (RWA only)
        double attractor = -1.0;
        if (sc.treatment == dynamics::Treatment::RWA && sc.p.xi > 0.0) {
            try {
                if (sc.kind == dynamics::Kind::HarmonicTrap) {
                    const int well = static_cast<int>(std::floor(sc.p.x_E / kPi));
                    const auto fps = analysis::fixed_points(sc, well, well);
                    if (!fps.empty())
                        attractor = static_cast<double>(static_cast<int>(fps[0].kind));
                } else {
                    const double x_star = std::floor(end.x / kPi) * kPi +
                                          potential::well_minimum_offset({sc.p.xi});
                    attractor = static_cast<double>(
                        static_cast<int>(analysis::classify(x_star, sc).kind));
                }
            } catch (const std::exception&) {
                attractor = -1.0;  // degenerate boundary stays unclassified
            }
        }

        // distance to the rotating-wave twin of a driven run
        double rwa_distance = std::nan("");
        if (sc.treatment == dynamics::Treatment::FullDriven &&
            traj.status == dynamics::IntegrationStatus::Completed) {
            dynamics::Scenario twin = sc;
            twin.treatment = dynamics::Treatment::RWA;
            const auto rwa = dynamics::integrate(twin, ic, traj.tau_end(), tol);
            if (rwa.status == dynamics::IntegrationStatus::Completed) {
                rwa_distance = 0.0;
                for (int i = 0; i <= 4000; ++i) {
                    const double tau = traj.tau_begin() +
                                       (traj.tau_end() - traj.tau_begin()) * i / 4000.0;
                    rwa_distance =
                        std::max(rwa_distance, std::abs(traj.at(tau).x - rwa.at(tau).x));
                }
            }
        }

        rows[index].values = {static_cast<double>(index),
                              sc.p.xi,
                              sc.p.Omega,
                              sc.p.Gamma,
                              sc.p.omega_ho,
                              ic.v,
                              static_cast<double>(static_cast<int>(traj.status)),
                              end.x,
                              end.v,
                              std::floor(end.x / kPi),
                              static_cast<double>(hops),
                              periodic ? 1.0 : 0.0,
                              validity_ok ? 1.0 : 0.0,
                              attractor,
                              rwa_distance};
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < total; ++i) run_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), total);
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1))
                    run_point(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    for (const auto& r : rows) csv.row(r.values);
    std::printf("sweep: %zu points -> sweep.csv\n", total);
    return kExitOk;
}

int cmd_figure(const std::string& name, const std::string& out_dir) {
    if (!is_known_figure(name)) {
        std::fprintf(stderr, "unknown figure '%s'\n", name.c_str());
        return kExitConfig;
    }
    const auto out = write_figure(name, out_dir);
    for (const auto& f : out.files) std::printf("wrote %s\n", f.c_str());
    if (!out.script.empty()) std::printf("wrote %s\n", out.script.c_str());
    return kExitOk;
}

}  // namespace mirrorlab::tool
