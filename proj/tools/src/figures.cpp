#include "figures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

#include "csv.hpp"
#include "mirrorlab/analysis.hpp"
#include "mirrorlab/analytic.hpp"
#include "mirrorlab/dynamics.hpp"
#include "mirrorlab/modes.hpp"
#include "mirrorlab/potential.hpp"

namespace mirrorlab::tool {

namespace {

constexpr double kPi = std::numbers::pi;

using dynamics::Scenario;
using dynamics::State;
using dynamics::Treatment;

std::string join(const std::string& dir, const std::string& file) {
    if (dir.empty() || dir == ".") return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

void write_gnuplot(FigureOutput& out, const std::string& dir, const std::string& stem,
                   const std::vector<std::string>& plot_lines) {
    const std::string path = join(dir, stem + ".gp");
    std::ofstream gp(path);
    if (!gp) throw std::runtime_error("cannot open '" + path + "'");
    gp << "set datafile separator ','\n";
    gp << "set key left top\n";
    for (const auto& line : plot_lines) gp << line << "\n";
    out.script = path;
}

void trajectory_csv(FigureOutput& out, const std::string& dir, const std::string& name,
                    const dynamics::Trajectory& traj, std::size_t samples,
                    const std::map<std::string, std::string>& provenance,
                    double x_offset = 0.0) {
    CsvWriter csv(join(dir, name));
    csv.comments(provenance);
    csv.header({"tau", "x", "v"});
    for (const auto& s : traj.sample(samples)) csv.row({s.tau, s.x - x_offset, s.v});
    out.files.push_back(csv.path());
}

void pasted_csv(FigureOutput& out, const std::string& dir, const std::string& name,
                const analytic::PastedOrbit& orbit, std::size_t samples,
                const std::map<std::string, std::string>& provenance) {
    CsvWriter csv(join(dir, name));
    csv.comments(provenance);
    csv.header({"tau", "x", "v"});
    for (const auto& s : orbit.sample(samples)) csv.row({s.tau, s.x, s.v});
    out.files.push_back(csv.path());
}

// ---- figure 1: in-cavity amplitude vs mirror position --------------------

FigureOutput fig1(const std::string& dir) {
    FigureOutput out;
    const modes::ModeParams p{1.0, 10.0};
    CsvWriter csv(join(dir, "fig01_mode_amplitude.csv"));
    csv.comments({{"chi0_m", "10"}, {"k_per_m", "1"}});
    csv.header({"q", "L"});
    const int per_period = 2000;
    const int n_periods = 4;
    for (int i = 1; i <= per_period * n_periods; ++i) {
        const double q = kPi * i / per_period;
        csv.row({q, modes::eval_mode(q, p).L});
    }
    out.files.push_back(csv.path());
    write_gnuplot(out, dir, "fig01",
                  {"set yrange [0:12]",
                   "plot 'fig01_mode_amplitude.csv' using 1:2 with lines title 'L(q)'"});
    return out;
}

// ---- figure 2: the radiation-pressure potential for three opacities ------

FigureOutput fig2(const std::string& dir) {
    FigureOutput out;
    std::vector<std::string> plots;
    for (double xi : {1.0, 10.0, 50.0}) {
        const std::string name = "fig02_potential_xi" + std::to_string(static_cast<int>(xi)) + ".csv";
        CsvWriter csv(join(dir, name));
        csv.comments({{"xi", format_g17(xi)}});
        csv.header({"x", "v_rwa"});
        const int n = 6000;
        for (int i = 0; i <= n; ++i) {
            const double x = 3.0 * kPi * i / n;
            csv.row({x, potential::v_rwa(x, {xi})});
        }
        out.files.push_back(csv.path());
        plots.push_back(name);
    }
    write_gnuplot(out, dir, "fig02",
                  {"plot '" + plots[0] + "' using 1:2 with lines title 'xi=1', \\",
                   "     '" + plots[1] + "' using 1:2 with lines title 'xi=10', \\",
                   "     '" + plots[2] + "' using 1:2 with lines title 'xi=50'"});
    return out;
}

// ---- figure 3: sawtooth interpolant and its relative error ---------------

FigureOutput fig3a(const std::string& dir) {
    FigureOutput out;
    const potential::PotentialParams p{50.0};
    CsvWriter csv(join(dir, "fig03a_well_closeup.csv"));
    csv.comments({{"xi", "50"}});
    csv.header({"x", "v_rwa", "v_sawtooth"});
    const int n = 8000;
    for (int i = 0; i <= n; ++i) {
        const double x = 4.0 * kPi + kPi * i / n;
        csv.row({x, potential::v_rwa(x, p), potential::v_sawtooth(x, p)});
    }
    out.files.push_back(csv.path());
    write_gnuplot(out, dir, "fig03a",
                  {"plot 'fig03a_well_closeup.csv' using 1:2 with lines title 'exact', \\",
                   "     'fig03a_well_closeup.csv' using 1:3 with lines title 'sawtooth'"});
    return out;
}

FigureOutput fig3b(const std::string& dir) {
    FigureOutput out;
    std::vector<std::string> plots;
    for (double xi : {50.0, 100.0, 150.0}) {
        const potential::PotentialParams p{xi};
        const std::string name = "fig03b_relerr_xi" + std::to_string(static_cast<int>(xi)) + ".csv";
        CsvWriter csv(join(dir, name));
        csv.comments({{"xi", format_g17(xi)}});
        csv.header({"x", "rel_err"});
        const int n = 8000;
        for (int i = 0; i <= n; ++i) {
            const double x = 4.0 * kPi + 0.005 + (kPi - 0.01) * i / n;
            const double v = potential::v_rwa(x, p);
            csv.row({x, std::abs(v - potential::v_sawtooth(x, p)) / std::abs(v)});
        }
        out.files.push_back(csv.path());
        plots.push_back(name);
    }
    write_gnuplot(out, dir, "fig03b",
                  {"set logscale y",
                   "plot '" + plots[0] + "' using 1:2 with lines title 'xi=50', \\",
                   "     '" + plots[1] + "' using 1:2 with lines title 'xi=100', \\",
                   "     '" + plots[2] + "' using 1:2 with lines title 'xi=150'"});
    return out;
}

// ---- figure 4: energy landscape contour data ------------------------------

FigureOutput fig4(const std::string& dir) {
    FigureOutput out;
    const potential::PotentialParams p{1.0};
    CsvWriter csv(join(dir, "fig04_energy_grid.csv"));
    csv.comments({{"xi", "1"}});
    csv.header({"x", "v", "energy"});
    const int nx = 301, nv = 201;
    for (int i = 0; i <= nx; ++i) {
        const double x = 2.0 * kPi * i / nx;
        const double V = potential::v_rwa(x, p);
        for (int j = 0; j <= nv; ++j) {
            const double v = -2.0 + 4.0 * j / nv;
            csv.row({x, v, 0.5 * v * v + V});
        }
    }
    out.files.push_back(csv.path());
    write_gnuplot(out, dir, "fig04",
                  {"set view map", "set contour", "set cntrparam levels discrete "
                   "-0.4,-0.2,0,0.2,0.4,0.6,0.8",
                   "splot 'fig04_energy_grid.csv' using 1:2:3 with lines notitle"});
    return out;
}

// ---- figure 5: mode profiles on and off resonance -------------------------

FigureOutput fig5(const std::string& dir, bool resonant) {
    FigureOutput out;
    const modes::ModeParams p{100.0, 1.0};
    const double xi = p.xi();
    const int n_well = 4;
    const double q = resonant ? (n_well * kPi + 1.0 / xi) / p.k
                              : (n_well + 0.5) * kPi / p.k;
    const auto mode = modes::eval_mode(q, p);
    const std::string name = resonant ? "fig05a_profile_resonant.csv"
                                      : "fig05b_profile_offresonant.csv";
    CsvWriter csv(join(dir, name));
    csv.comments({{"chi0_m", "1"}, {"k_per_m", "100"},
                  {"kq", format_g17(p.k * q)}, {"xi", format_g17(xi)}});
    csv.header({"x", "V"});
    const double lambda = 2.0 * kPi / p.k;
    const double x_max = q + 3.0 * lambda;
    const int n = static_cast<int>(std::ceil(2000.0 * x_max / lambda));  // 2000 per wavelength
    for (int i = 0; i <= n; ++i) {
        const double x = x_max * i / n;
        csv.row({x, mode.profile(x)});
    }
    out.files.push_back(csv.path());
    write_gnuplot(out, dir, resonant ? "fig05a" : "fig05b",
                  {"plot '" + name + "' using 1:2 with lines title 'V(x)'"});
    return out;
}

// ---- figure 6: bounded RWA orbit vs the pasted solution -------------------

FigureOutput fig6(const std::string& dir) {
    FigureOutput out;
    const double xi = 50.0;
    auto sc = Scenario::radiation(xi, 1e9, Treatment::RWA);
    const State ic{0.0, 4.0 * kPi + 1.0 / xi, 0.0};
    const double tau_end = 15.0;
    auto traj = dynamics::integrate(sc, ic, tau_end);
    const std::map<std::string, std::string> prov{
        {"xi", "50"}, {"treatment", "rwa"}, {"x0", format_g17(ic.x)}, {"v0", "0"}};
    trajectory_csv(out, dir, "fig06_numeric.csv", traj, 3000, prov);

    const double E = dynamics::energy(ic, sc);
    const double v0 = analytic::ic_match(E, {xi});
    auto pasted = analytic::rwa_pasted({xi}, 4, v0, 0.0, tau_end);
    auto prov2 = prov;
    prov2["v0_matched"] = format_g17(v0);
    prov2["period"] = format_g17(*pasted.period);
    pasted_csv(out, dir, "fig06_pasted.csv", pasted, 3000, prov2);

    write_gnuplot(out, dir, "fig06",
                  {"plot 'fig06_numeric.csv' using 1:2 with lines title 'numeric', \\",
                   "     'fig06_pasted.csv' using 1:2 with lines dt 2 title 'pasted'"});
    return out;
}

// ---- figure 7: approach to the RWA with growing drive frequency -----------

FigureOutput fig7(const std::string& dir) {
    FigureOutput out;
    const double xi = 10.0;
    const State ic{0.0, 4.0 * kPi + 1.0 / xi, 0.0};
    const double tau_end = 30.0;
    std::vector<std::string> plots;
    for (double Om : {100.0, 250.0, 500.0}) {
        auto sc = Scenario::radiation(xi, Om, Treatment::FullDriven);
        auto traj = dynamics::integrate(sc, ic, tau_end);
        const std::string name =
            "fig07_omega" + std::to_string(static_cast<int>(Om)) + ".csv";
        trajectory_csv(out, dir, name, traj, 6000,
                       {{"xi", "10"}, {"omega", format_g17(Om)}, {"treatment", "full"},
                        {"x0", format_g17(ic.x)}, {"v0", "0"}});
        plots.push_back(name);
    }
    auto rwa = dynamics::integrate(Scenario::radiation(xi, 1e9, Treatment::RWA), ic, tau_end);
    trajectory_csv(out, dir, "fig07_rwa.csv", rwa, 6000,
                   {{"xi", "10"}, {"treatment", "rwa"}, {"x0", format_g17(ic.x)}, {"v0", "0"}});
    write_gnuplot(out, dir, "fig07",
                  {"plot '" + plots[0] + "' using 1:2 with lines title 'Omega=100', \\",
                   "     '" + plots[1] + "' using 1:2 with lines title 'Omega=250', \\",
                   "     '" + plots[2] + "' using 1:2 with lines title 'Omega=500', \\",
                   "     'fig07_rwa.csv' using 1:2 with lines dt 3 title 'RWA'"});
    return out;
}

// ---- figure 8: phase portraits around a well -------------------------------

FigureOutput fig8(const std::string& dir, double Gamma, char panel) {
    FigureOutput out;
    const double xi = 10.0;
    auto sc = Scenario::friction(xi, 0.0, Gamma, Treatment::RWA);
    const double x_star = 4.0 * kPi + potential::well_minimum_offset({xi});
    const std::string stem = std::string("fig08") + panel;

    const std::vector<State> ics{
        {0.0, x_star - 0.15, 0.9},  {0.0, x_star + 0.55, 0.0}, {0.0, x_star, -0.9},
        {0.0, x_star - 0.05, 0.45}, {0.0, x_star + 0.3, -0.45}, {0.0, 4.0 * kPi + 0.02, 0.0},
    };
    const double tau_end = (Gamma > 3.0) ? 6.0 : 12.0;
    for (std::size_t i = 0; i < ics.size(); ++i) {
        auto traj = dynamics::integrate(sc, ics[i], tau_end);
        trajectory_csv(out, dir, stem + "_traj" + std::to_string(i + 1) + ".csv", traj, 4000,
                       {{"xi", "10"}, {"gamma", format_g17(Gamma)},
                        {"x0", format_g17(ics[i].x)}, {"v0", format_g17(ics[i].v)}});
    }

    // fixed points and, for the spiral panel, the saddle manifolds
    const auto fps = analysis::fixed_points(sc, 4, 4);
    {
        CsvWriter csv(join(dir, stem + "_fixed_points.csv"));
        csv.header({"x", "v", "kind"});
        for (const auto& fp : fps)
            csv.row({fp.x, 0.0, static_cast<double>(static_cast<int>(fp.kind))});
        out.files.push_back(csv.path());
    }
    if (!fps.empty() && fps[0].manifold_slopes) {
        CsvWriter csv(join(dir, stem + "_manifolds.csv"));
        csv.comment("lines x' = lambda (x - 4 pi); columns give both branches");
        csv.header({"x", "v_stable", "v_unstable"});
        const auto slopes = *fps[0].manifold_slopes;
        for (int i = -100; i <= 100; ++i) {
            const double dx = 0.4 * i / 100.0;
            csv.row({4.0 * kPi + dx, slopes.stable * dx, slopes.unstable * dx});
        }
        out.files.push_back(csv.path());
    }
    write_gnuplot(out, dir, stem,
                  {"plot '" + stem + "_traj1.csv' using 2:3 with lines notitle, \\",
                   "     '" + stem + "_traj2.csv' using 2:3 with lines notitle, \\",
                   "     '" + stem + "_traj3.csv' using 2:3 with lines notitle, \\",
                   "     '" + stem + "_traj4.csv' using 2:3 with lines notitle, \\",
                   "     '" + stem + "_traj5.csv' using 2:3 with lines notitle, \\",
                   "     '" + stem + "_traj6.csv' using 2:3 with lines notitle, \\",
                   "     '" + stem + "_fixed_points.csv' using 1:2 with points pt 7 notitle"});
    return out;
}

// ---- figure 9: damped orbit vs the damped pasted solution -----------------

FigureOutput fig9(const std::string& dir, double Gamma, char panel) {
    FigureOutput out;
    const double xi = 50.0;
    auto scf = Scenario::friction(xi, 0.0, Gamma, Treatment::RWA);
    const State ic{0.0, 4.0 * kPi + 1.0 / xi, 0.0};
    const double tau_end = 10.0;
    auto traj = dynamics::integrate(scf, ic, tau_end);
    const std::string stem = std::string("fig09") + panel;
    const std::map<std::string, std::string> prov{
        {"xi", "50"}, {"gamma", format_g17(Gamma)}, {"x0", format_g17(ic.x)}, {"v0", "0"}};
    trajectory_csv(out, dir, stem + "_numeric.csv", traj, 3000, prov);

    const double E = potential::v_rwa(ic.x, {xi});  // starts at rest
    const double v0 = analytic::ic_match(E, {xi});
    auto pasted = analytic::friction_pasted({xi}, Gamma, {0.0, ic.x, v0}, tau_end);
    auto prov2 = prov;
    prov2["v0_matched"] = format_g17(v0);
    pasted_csv(out, dir, stem + "_pasted.csv", pasted, 3000, prov2);
    write_gnuplot(out, dir, stem,
                  {"plot '" + stem + "_numeric.csv' using 1:2 with lines title 'numeric', \\",
                   "     '" + stem + "_pasted.csv' using 1:2 with lines dt 2 title 'pasted'"});
    return out;
}

// ---- figure 10: driven friction, well hopping and settling ----------------

FigureOutput fig10(const std::string& dir) {
    FigureOutput out;
    const double xi = 10.0;
    const double Gamma = 0.07;
    const State ic{0.0, 4.0 * kPi + 1.0 / xi, 0.0};
    const double tau_end = 100.0;
    std::vector<std::string> plots;
    for (double Om : {100.0, 500.0}) {
        auto sc = Scenario::friction(xi, Om, Gamma, Treatment::FullDriven);
        auto traj = dynamics::integrate(sc, ic, tau_end);
        const std::string name = "fig10_omega" + std::to_string(static_cast<int>(Om)) + ".csv";
        trajectory_csv(out, dir, name, traj, 8000,
                       {{"xi", "10"}, {"gamma", "0.07"}, {"omega", format_g17(Om)},
                        {"treatment", "full"}, {"x0", format_g17(ic.x)}, {"v0", "0"}});
        plots.push_back(name);
    }
    auto rwa = dynamics::integrate(Scenario::friction(xi, 0.0, Gamma, Treatment::RWA), ic, tau_end);
    trajectory_csv(out, dir, "fig10_rwa.csv", rwa, 8000,
                   {{"xi", "10"}, {"gamma", "0.07"}, {"treatment", "rwa"},
                    {"x0", format_g17(ic.x)}, {"v0", "0"}});
    write_gnuplot(out, dir, "fig10",
                  {"plot '" + plots[0] + "' using 1:2 with lines title 'Omega=100', \\",
                   "     '" + plots[1] + "' using 1:2 with lines title 'Omega=500', \\",
                   "     'fig10_rwa.csv' using 1:2 with lines dt 3 title 'RWA'"});
    return out;
}

// ---- figure 11: driven friction near the spiral frequency -----------------

FigureOutput fig11(const std::string& dir, char panel) {
    FigureOutput out;
    const bool a = (panel == 'a');
    const double xi = a ? 10.0 : 50.0;
    const double Om = a ? 6.0 : 14.1;
    auto sc = Scenario::friction(xi, Om, 1.0, Treatment::FullDriven);
    const State ic{0.0, 4.0 * kPi + 1.0 / xi, 0.0};
    const double tau_end = a ? 50.0 : 40.0;
    auto traj = dynamics::integrate(sc, ic, tau_end);
    const std::string stem = std::string("fig11") + panel;
    CsvWriter csv(join(dir, stem + ".csv"));
    csv.comments({{"xi", format_g17(xi)}, {"omega", format_g17(Om)}, {"gamma", "1"},
                  {"treatment", "full"}, {"x0", format_g17(ic.x)}, {"v0", "0"}});
    csv.header({"tau", "x", "v", "qdot_over_c", "qddot_over_comega0"});
    for (const auto& s : traj.sample(8000)) {
        const double acc = dynamics::rhs(s, sc);
        csv.row({s.tau, s.x, s.v, 2.0 / Om * s.v, 4.0 / (Om * Om) * acc});
    }
    out.files.push_back(csv.path());
    write_gnuplot(out, dir, stem,
                  {"plot '" + stem + ".csv' using 1:2 with lines title 'x(tau)'"});
    return out;
}

// ---- figure 12: trapped driven mirror, steady-state oscillation -----------

FigureOutput fig12(const std::string& dir, char panel) {
    FigureOutput out;
    const bool a = (panel == 'a');
    const double xi = 10.0;
    const double Om = 500.0;
    const double w_ho = a ? 10.0 : 500.0;
    const double x_E = 4.0 * kPi + 1.0 / xi;
    auto sc = Scenario::harmonic_trap(xi, Om, 1.0, w_ho, x_E, Treatment::FullDriven);
    const State ic{0.0, x_E, 0.0};
    auto traj = dynamics::integrate(sc, ic, 40.0);
    const std::string stem = std::string("fig12") + panel;
    trajectory_csv(out, dir, stem + ".csv", traj, 40000,
                   {{"xi", "10"}, {"omega", "500"}, {"omega_ho", format_g17(w_ho)},
                    {"gamma", "1"}, {"x_e", format_g17(x_E)}, {"treatment", "full"},
                    {"column_note", "x column holds u = x - x_E"}},
                   x_E);
    write_gnuplot(out, dir, stem,
                  {"set xrange [39.9:40]",
                   "plot '" + stem + ".csv' using 1:2 with lines title 'u(tau)'"});
    return out;
}

using FigureFn = std::function<FigureOutput(const std::string&)>;

const std::map<std::string, FigureFn>& registry() {
    static const std::map<std::string, FigureFn> reg = {
        {"1", fig1},
        {"2", fig2},
        {"3a", fig3a},
        {"3b", fig3b},
        {"4", fig4},
        {"5a", [](const std::string& d) { return fig5(d, true); }},
        {"5b", [](const std::string& d) { return fig5(d, false); }},
        {"6", fig6},
        {"7", fig7},
        {"8a", [](const std::string& d) { return fig8(d, 1.0, 'a'); }},
        {"8b", [](const std::string& d) { return fig8(d, 7.0, 'b'); }},
        {"9a", [](const std::string& d) { return fig9(d, 1.0, 'a'); }},
        {"9b", [](const std::string& d) { return fig9(d, 16.0, 'b'); }},
        {"10", fig10},
        {"11a", [](const std::string& d) { return fig11(d, 'a'); }},
        {"11b", [](const std::string& d) { return fig11(d, 'b'); }},
        {"12a", [](const std::string& d) { return fig12(d, 'a'); }},
        {"12b", [](const std::string& d) { return fig12(d, 'b'); }},
    };
    return reg;
}

// multi-panel figures expand to their panels
const std::map<std::string, std::vector<std::string>>& groups() {
    static const std::map<std::string, std::vector<std::string>> g = {
        {"3", {"3a", "3b"}},   {"5", {"5a", "5b"}},   {"8", {"8a", "8b"}},
        {"9", {"9a", "9b"}},   {"11", {"11a", "11b"}}, {"12", {"12a", "12b"}},
    };
    return g;
}

}  // namespace

bool is_known_figure(const std::string& name) {
    return registry().count(name) > 0 || groups().count(name) > 0;
}

FigureOutput write_figure(const std::string& name, const std::string& out_dir) {
    if (auto git = groups().find(name); git != groups().end()) {
        FigureOutput all;
        for (const auto& panel : git->second) {
            auto part = write_figure(panel, out_dir);
            all.files.insert(all.files.end(), part.files.begin(), part.files.end());
            all.script = part.script;
        }
        return all;
    }
    const auto it = registry().find(name);
    if (it == registry().end())
        throw std::invalid_argument("unknown figure '" + name + "' (expected 1..12)");
    return it->second(out_dir);
}

std::vector<std::string> figure_names() {
    std::vector<std::string> names;
    for (const auto& [k, _] : registry()) names.push_back(k);
    for (const auto& [k, _] : groups()) names.push_back(k);
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace mirrorlab::tool
