// Command-line front end: config ingestion, the five analysis verbs, and the
// parameter-sweep driver.  All numeric output is CSV with 17-significant-digit
// rendering so repeated runs are byte-identical.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <shockselect/config.hpp>
#include <shockselect/csv.hpp>
#include <shockselect/model.hpp>
#include <shockselect/pde.hpp>
#include <shockselect/regularization.hpp>
#include <shockselect/shock.hpp>
#include <shockselect/wave.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shockselect;

namespace {

const std::set<std::string>& allowed_keys() {
    static const std::set<std::string> keys = {
        "model.a",          "model.b",           "model.delta",        "model.poly",
        "reaction.gamma",   "reg.family",        "reg.A",              "solve.target",
        "wave.rule",        "wave.c",            "wave.c_min",         "wave.c_max",
        "sim.x_min",        "sim.x_max",         "sim.dx",             "sim.t_end",
        "sim.eps",          "sim.snapshots",     "sim.regularisation", "sim.discretisation",
        "sim.integrator",   "sim.ic_x0",         "sim.rtol",           "sim.atol",
        "sweep.variable",   "sweep.min",         "sweep.max",          "sweep.step",
        "sweep.command",    "out.dir",
    };
    return keys;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

// Make every key explicit so the emitted echo fully determines the run.
void fill_defaults(KeyValueConfig& cfg) {
    auto def = [&](const std::string& k, const std::string& v) {
        if (!cfg.has(k)) cfg.set(k, v);
    };
    if (!cfg.has("model.poly")) {
        def("model.a", "0.2");
        def("model.b", "0.4");
        def("model.delta", "0.5");
    }
    def("reaction.gamma", "0.5");
    def("reg.family", "exponential");
    def("reg.A", "0");
    def("solve.target", "continuous-d");
    def("wave.rule", "continuous-d");
    def("wave.c_min", "0");
    def("wave.c_max", "0.5");

    SimulationConfig sim;  // library defaults
    def("sim.x_min", format_double(sim.x_min));
    def("sim.x_max", format_double(sim.x_max));
    def("sim.dx", format_double(sim.dx));
    def("sim.t_end", format_double(sim.t_end));
    def("sim.eps", format_double(sim.eps));
    def("sim.snapshots", join_doubles(sim.snapshot_times));
    def("sim.regularisation", "linear");
    def("sim.discretisation", "central");
    def("sim.integrator", "stiff");
    def("sim.ic_x0",
        format_double(0.5 * (cfg.get_double("sim.x_min", 0.0) + cfg.get_double("sim.x_max", 10.0))));
    def("sim.rtol", format_double(sim.rtol));
    def("sim.atol", format_double(sim.atol));
    def("out.dir", "out");
}

DiffusivityModel resolve_diffusivity(const KeyValueConfig& cfg) {
    if (cfg.has("model.poly")) return DiffusivityModel::polynomial(cfg.get_double_list("model.poly"));
    return DiffusivityModel::cubic(cfg.get_double("model.a", 0.2), cfg.get_double("model.b", 0.4),
                                   cfg.get_double("model.delta", 0.5));
}

ReactionModel resolve_reaction(const KeyValueConfig& cfg) {
    std::string g = cfg.get_string("reaction.gamma", "0.5");
    if (g == "none") return ReactionModel::none();
    return ReactionModel::cubic(cfg.get_double("reaction.gamma", 0.5));
}

WeightFamily parse_weight_family(const std::string& name) {
    if (name == "constant") return WeightFamily::constant;
    if (name == "exponential") return WeightFamily::exponential;
    if (name == "quadratic") return WeightFamily::quadratic;
    if (name == "linear") return WeightFamily::linear;
    throw std::runtime_error("unknown reg.family '" + name +
                             "' (expected constant|exponential|quadratic|linear)");
}

RegularisationWeight resolve_weight(const KeyValueConfig& cfg) {
    WeightFamily fam = parse_weight_family(cfg.get_string("reg.family", "exponential"));
    double a = cfg.get_double("reg.A", 0.0);
    switch (fam) {
        case WeightFamily::constant: return RegularisationWeight::constant();
        case WeightFamily::exponential: return RegularisationWeight::exponential(a);
        case WeightFamily::quadratic: return RegularisationWeight::quadratic(a);
        case WeightFamily::linear: return RegularisationWeight::linear(a);
    }
    throw std::logic_error("unreachable");
}

ShockPosition resolve_rule_shock(const PotentialModel& pot, const std::string& rule,
                                 const std::string& key) {
    if (rule == "equal-area") return equal_area_shock(pot);
    if (rule == "continuous-d") return continuous_diffusivity_shock(pot);
    throw std::runtime_error("unknown " + key + " '" + rule + "' (expected equal-area|continuous-d)");
}

SimulationConfig resolve_sim(const KeyValueConfig& cfg) {
    SimulationConfig s;
    s.x_min = cfg.get_double("sim.x_min", s.x_min);
    s.x_max = cfg.get_double("sim.x_max", s.x_max);
    s.dx = cfg.get_double("sim.dx", s.dx);
    s.t_end = cfg.get_double("sim.t_end", s.t_end);
    s.eps = cfg.get_double("sim.eps", s.eps);
    if (cfg.has("sim.snapshots")) s.snapshot_times = cfg.get_double_list("sim.snapshots");

    std::string reg = cfg.get_string("sim.regularisation", "linear");
    if (reg == "linear") {
        s.regularisation = RegularisationKind::linear;
        s.weight = RegularisationWeight::constant();
    } else if (reg == "nonlinear") {
        s.regularisation = RegularisationKind::nonlinear;
        s.weight = resolve_weight(cfg);
    } else {
        throw std::runtime_error("unknown sim.regularisation '" + reg +
                                 "' (expected linear|nonlinear)");
    }

    std::string disc = cfg.get_string("sim.discretisation", "central");
    if (disc == "central") s.discretisation = Discretisation::central;
    else if (disc == "conservative") s.discretisation = Discretisation::conservative;
    else throw std::runtime_error("unknown sim.discretisation '" + disc +
                                  "' (expected central|conservative)");

    std::string ti = cfg.get_string("sim.integrator", "stiff");
    if (ti == "stiff") s.integrator = TimeIntegrator::stiff;
    else if (ti == "explicit") s.integrator = TimeIntegrator::explicit_rk;
    else throw std::runtime_error("unknown sim.integrator '" + ti + "' (expected stiff|explicit)");

    s.ic_x0 = cfg.get_double("sim.ic_x0", 0.5 * (s.x_min + s.x_max));
    s.rtol = cfg.get_double("sim.rtol", s.rtol);
    s.atol = cfg.get_double("sim.atol", s.atol);
    return s;
}

void write_metadata(const fs::path& dir, const std::string& command, const KeyValueConfig& cfg) {
    json j;
    j["command"] = command;
    j["config"] = json::object();
    for (const auto& [k, v] : cfg.entries()) j["config"][k] = v;
    j["versions"] = {{"shockselect", "1.0.0"}, {"config_format", 1}};
    std::ofstream meta(dir / "metadata.json", std::ios::binary);
    if (!meta) throw std::runtime_error("cannot write metadata.json");
    meta << j.dump(2) << '\n';

    std::ofstream echo(dir / "resolved_config.txt", std::ios::binary);
    if (!echo) throw std::runtime_error("cannot write resolved_config.txt");
    echo << cfg.echo();
}

void write_gnuplot(const fs::path& dir, const std::string& body) {
    std::ofstream gp(dir / "plot.gp", std::ios::binary);
    gp << "set datafile separator ','\nset key autotitle columnhead\n" << body;
}

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    int workers = 0;
    bool gnuplot = false;
};

KeyValueConfig resolve_config(const CommonArgs& args) {
    KeyValueConfig cfg;
    if (!args.config_path.empty()) cfg = KeyValueConfig::from_file(args.config_path);
    for (const auto& p : args.sets) cfg.set_pair(p);
    if (!args.out_dir.empty()) cfg.set("out.dir", args.out_dir);
    if (const char* env = std::getenv("SHOCKSELECT_OUT"); env && *env) cfg.set("out.dir", env);
    cfg.require_known(allowed_keys());
    fill_defaults(cfg);
    return cfg;
}

fs::path prepare_out(const KeyValueConfig& cfg, const std::string& command) {
    fs::path dir = cfg.get_string("out.dir", "out");
    fs::create_directories(dir);
    write_metadata(dir, command, cfg);
    return dir;
}

// ---------------------------------------------------------------------------
// analyze: the four rule positions, the S_L table, and the length extrema.

void cmd_analyze(const KeyValueConfig& cfg, const CommonArgs& args) {
    PotentialModel pot(resolve_diffusivity(cfg));
    ShockFamily fam(pot);
    fs::path dir = prepare_out(cfg, "analyze");

    CsvWriter rules(dir / "shock_rules.csv", {"rule", "u_l", "u_r", "phi_s", "s_l", "status"});
    auto emit = [&](const std::string& name, auto&& make) {
        try {
            ShockPosition s = make();
            rules.row(name, s.u_l, s.u_r, s.phi_s, s.u_r - s.u_l, "ok");
            std::printf("%-14s u_l = %.10f  u_r = %.10f  phi_s = %.10f\n", name.c_str(), s.u_l,
                        s.u_r, s.phi_s);
        } catch (const solver_error&) {
            double nan = std::numeric_limits<double>::quiet_NaN();
            rules.row(name, nan, nan, nan, nan, "unrepresentable");
            std::printf("%-14s unrepresentable for this model\n", name.c_str());
        }
    };
    emit("equal-area", [&] { return equal_area_shock(pot); });
    emit("continuous-d", [&] { return continuous_diffusivity_shock(pot); });
    emit("lower-knee", [&] { return knee_shocks(pot).first; });
    emit("upper-knee", [&] { return knee_shocks(pot).second; });
    rules.close();

    CsvWriter table(dir / "s_l_table.csv", {"phi_s", "u_l", "u_r", "s_l"});
    const int n = 201;
    for (int i = 0; i < n; ++i) {
        double p = fam.phi_min() + (fam.phi_max() - fam.phi_min()) * i / (n - 1);
        auto s = fam.at(p);
        table.row(p, s.u_l, s.u_r, s.u_r - s.u_l);
    }
    table.close();

    CsvWriter ext(dir / "extrema.csv", {"kind", "phi_s", "s_l"});
    for (const auto& e : shock_length_extrema(pot))
        ext.row(e.kind == ExtremumKind::maximum ? "maximum" : "minimum", e.phi_s, e.length);
    ext.close();

    if (args.gnuplot)
        write_gnuplot(dir,
                      "plot 's_l_table.csv' using 1:4 with lines title 'S_L', \\\n"
                      "     'shock_rules.csv' using 4:5 with points pt 7 title 'rules'\n");
}

// ---------------------------------------------------------------------------
// solve-a: weight parameter selecting a target rule; residual curve on failure.

void cmd_solve_a(const KeyValueConfig& cfg, const CommonArgs& args) {
    PotentialModel pot(resolve_diffusivity(cfg));
    fs::path dir = prepare_out(cfg, "solve-a");

    WeightFamily family = parse_weight_family(cfg.get_string("reg.family", "exponential"));
    if (family != WeightFamily::exponential && family != WeightFamily::quadratic)
        throw std::runtime_error("solve-a needs reg.family = exponential or quadratic");
    std::string target = cfg.get_string("solve.target", "continuous-d");
    ShockPosition s = resolve_rule_shock(pot, target, "solve.target");

    WeightSolve ws;
    try {
        ws = solve_weight_parameter_detailed(pot, s, family);
    } catch (const solver_error&) {
        CsvWriter curve(dir / "residual_curve.csv", {"A", "residual"});
        for (const auto& sample : weight_residual_curve(pot, s, family))
            curve.row(sample.a, sample.residual);
        curve.close();
        if (args.gnuplot)
            write_gnuplot(dir, "plot 'residual_curve.csv' using 1:2 with linespoints\n");
        throw;
    }

    CsvWriter report(dir / "a_report.csv",
                     {"family", "target", "A", "residual", "sign_changes", "u_l", "u_r", "phi_s"});
    report.row(cfg.get_string("reg.family", "exponential"), target, ws.a, ws.residual,
               ws.sign_changes, s.u_l, s.u_r, s.phi_s);
    report.close();
    std::printf("A = %.12f\nresidual = %.3e\n", ws.a, ws.residual);
}

// ---------------------------------------------------------------------------
// wave-speed: shooting solve (or fixed-c diagnostic) with phase-plane output.

void write_trajectory(const fs::path& path, const std::vector<PhasePoint>& traj) {
    CsvWriter w(path, {"psi", "u", "p"});
    for (const auto& q : traj) w.row(q.psi, q.u, q.p);
    w.close();
}

void cmd_wave_speed(const KeyValueConfig& cfg, const CommonArgs& args) {
    PotentialModel pot(resolve_diffusivity(cfg));
    ReactionModel reac = resolve_reaction(cfg);
    fs::path dir = prepare_out(cfg, "wave-speed");

    std::string rule = cfg.get_string("wave.rule", "continuous-d");
    ShockPosition s = resolve_rule_shock(pot, rule, "wave.rule");
    double c_min = cfg.get_double("wave.c_min", 0.0);
    double c_max = cfg.get_double("wave.c_max", 0.5);

    if (cfg.has("wave.c")) {  // diagnostic: no solve, report the mismatch
        if (reac.is_zero())
            throw solver_error("zero reaction admits no travelling wave; "
                               "use the time-dependent simulator for that case");
        double c = cfg.get_double("wave.c", 0.0);
        auto shot = shoot_manifolds(c, s, pot, reac);
        double dp = shot.p_at_ur - shot.p_at_ul;
        CsvWriter report(dir / "speed_report.csv",
                         {"mode", "rule", "c", "delta_p", "p_at_ur", "p_at_ul", "weak_residual"});
        report.row("diagnostic", rule, c, dp, shot.p_at_ur, shot.p_at_ul,
                   std::numeric_limits<double>::quiet_NaN());
        report.close();
        write_trajectory(dir / "unstable_manifold.csv", shot.unstable_trajectory);
        write_trajectory(dir / "stable_manifold.csv", shot.stable_trajectory);
        std::printf("c = %.12f (fixed)\ndelta_p = %.6e\n", c, dp);
    } else {
        auto sol = solve_wave_speed(s, pot, reac, c_min, c_max);
        CsvWriter report(dir / "speed_report.csv",
                         {"mode", "rule", "c", "delta_p", "p_at_ur", "p_at_ul", "weak_residual"});
        report.row("solve", rule, sol.c, sol.delta_p, sol.p_at_ur, sol.p_at_ul, sol.weak_residual);
        report.close();
        write_trajectory(dir / "unstable_manifold.csv", sol.unstable_trajectory);
        write_trajectory(dir / "stable_manifold.csv", sol.stable_trajectory);

        CsvWriter samples(dir / "delta_p_samples.csv", {"c", "delta_p", "status"});
        const int n = 21;
        for (int i = 0; i < n; ++i) {
            double c = c_min + (c_max - c_min) * i / (n - 1);
            try {
                auto shot = shoot_manifolds(c, s, pot, reac);
                samples.row(c, shot.p_at_ur - shot.p_at_ul, "ok");
            } catch (const solver_error&) {
                samples.row(c, std::numeric_limits<double>::quiet_NaN(), "escaped");
            }
        }
        samples.close();
        std::printf("c = %.12f\ndelta_p = %.3e\nweak_residual = %.3e\n", sol.c, sol.delta_p,
                    sol.weak_residual);
    }

    if (args.gnuplot)
        write_gnuplot(dir,
                      "plot 'unstable_manifold.csv' using 2:3 with lines title 'unstable', \\\n"
                      "     'stable_manifold.csv' using 2:3 with lines title 'stable'\n");
}

// ---------------------------------------------------------------------------
// simulate: time integration, snapshots, shock trace, error report.

void cmd_simulate(const KeyValueConfig& cfg, const CommonArgs& args) {
    PotentialModel pot(resolve_diffusivity(cfg));
    ReactionModel reac = resolve_reaction(cfg);
    SimulationConfig sim = resolve_sim(cfg);
    fs::path dir = prepare_out(cfg, "simulate");

    auto res = integrate(sim, pot, reac);

    for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%03zu.csv", k);
        CsvWriter snap(dir / name, {"x", "u"});
        for (std::size_t i = 0; i < res.grid.size(); ++i) snap.row(res.grid[i], res.snapshots[k][i]);
        snap.close();
    }

    std::map<double, double> speed_at;
    for (const auto& s : res.speeds) speed_at[s.t] = s.speed;
    CsvWriter trace(dir / "trace.csv", {"t", "x_s", "u_l", "u_r", "speed"});
    for (const auto& s : res.trace) {
        double nan = std::numeric_limits<double>::quiet_NaN();
        auto it = speed_at.find(s.t);
        trace.row(s.t, s.formed ? s.x_s : nan, s.formed ? s.u_l : nan, s.formed ? s.u_r : nan,
                  it == speed_at.end() ? nan : it->second);
    }
    trace.close();

    auto rep = discretisation_error_report(res.snapshots.back(), sim, pot);
    CsvWriter err(dir / "error_report.csv", {"scheme", "max_abs", "rms", "note"});
    err.row(rep.scheme == Discretisation::central ? "central" : "conservative", rep.max_abs,
            rep.rms, rep.note);
    err.close();

    if (!res.trace.empty() && res.trace.back().formed) {
        const auto& last = res.trace.back();
        std::printf("t = %g: x_s = %.6f  u_l = %.6f  u_r = %.6f\n", last.t, last.x_s, last.u_l,
                    last.u_r);
    } else {
        std::printf("no shock formed by t = %g\n", sim.t_end);
    }
    if (res.overshoot_flagged) std::printf("note: profile left [-0.05, 1.05] during the run\n");

    if (args.gnuplot) {
        char body[160];
        std::snprintf(body, sizeof body,
                      "plot for [k=0:%zu] sprintf('snapshot_%%03d.csv', k) using 1:2 with lines\n",
                      res.snapshots.size() - 1);
        write_gnuplot(dir, body);
    }
}

// ---------------------------------------------------------------------------
// sweep: one analyze / solve-a / wave-speed row per parameter value.

struct SweepRow {
    std::vector<std::string> cells;
    std::string status = "ok";
    int error_class = 0;  // exit-code class when status != ok
};

void cmd_sweep(const KeyValueConfig& cfg, const CommonArgs& args) {
    std::string variable = cfg.require_string("sweep.variable");
    if (!allowed_keys().count(variable) || variable.rfind("sweep.", 0) == 0 ||
        variable == "out.dir")
        throw std::runtime_error("sweep.variable must name a model/reaction/reg/sim key");
    std::string command = cfg.require_string("sweep.command");
    if (command != "analyze" && command != "solve-a" && command != "wave-speed")
        throw std::runtime_error("sweep.command must be analyze|solve-a|wave-speed");
    double lo = detail::parse_double(cfg.require_string("sweep.min"), "sweep.min");
    double hi = detail::parse_double(cfg.require_string("sweep.max"), "sweep.max");
    double step = detail::parse_double(cfg.require_string("sweep.step"), "sweep.step");
    if (!(step > 0.0) || hi < lo - 1e-12)
        throw std::runtime_error("empty sweep range: need sweep.min <= sweep.max and sweep.step > 0");
    std::vector<double> values;
    long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) values.push_back(lo + step * static_cast<double>(i));
    if (values.empty()) throw std::runtime_error("empty sweep range");

    std::vector<std::string> header{variable};
    std::size_t width = 0;
    if (command == "analyze") {
        for (const char* c : {"ea_u_l", "ea_u_r", "ea_phi_s", "cd_u_l", "cd_u_r", "cd_phi_s"})
            header.push_back(c);
        width = 6;
    } else if (command == "solve-a") {
        for (const char* c : {"A", "residual"}) header.push_back(c);
        width = 2;
    } else {
        for (const char* c : {"c", "delta_p", "weak_residual"}) header.push_back(c);
        width = 3;
    }
    header.push_back("status");

    auto run_row = [&](double value) -> SweepRow {
        SweepRow row;
        KeyValueConfig local = cfg;
        local.set(variable, format_double(value));
        try {
            PotentialModel pot(resolve_diffusivity(local));
            if (command == "analyze") {
                auto ea = equal_area_shock(pot);
                auto cd = continuous_diffusivity_shock(pot);
                for (double v : {ea.u_l, ea.u_r, ea.phi_s, cd.u_l, cd.u_r, cd.phi_s})
                    row.cells.push_back(format_double(v));
            } else if (command == "solve-a") {
                WeightFamily family = parse_weight_family(local.get_string("reg.family", ""));
                auto s = resolve_rule_shock(pot, local.get_string("solve.target", ""), "solve.target");
                auto ws = solve_weight_parameter_detailed(pot, s, family);
                row.cells = {format_double(ws.a), format_double(ws.residual)};
            } else {
                auto s = resolve_rule_shock(pot, local.get_string("wave.rule", ""), "wave.rule");
                auto sol = solve_wave_speed(s, pot, resolve_reaction(local),
                                            local.get_double("wave.c_min", 0.0),
                                            local.get_double("wave.c_max", 0.5));
                row.cells = {format_double(sol.c), format_double(sol.delta_p),
                             format_double(sol.weak_residual)};
            }
        } catch (const model_error&) {
            row.status = "model_error";
            row.error_class = 2;
        } catch (const instability_error&) {
            row.status = "instability_error";
            row.error_class = 4;
        } catch (const solver_error&) {
            row.status = "solver_error";
            row.error_class = 3;
        } catch (const std::exception&) {
            row.status = "error";
            row.error_class = 1;
        }
        row.cells.resize(width, "nan");
        return row;
    };

    // Rows run concurrently but land in preallocated slots, so assembly order
    // (and therefore the output bytes) is independent of scheduling.
    std::vector<SweepRow> rows(values.size());
    unsigned workers = args.workers > 0 ? static_cast<unsigned>(args.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, values.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < values.size(); i = next++) rows[i] = run_row(values[i]);
        });
    for (auto& t : pool) t.join();

    fs::path dir = prepare_out(cfg, "sweep");
    CsvWriter out(dir / "sweep.csv", header);
    std::size_t failed = 0;
    int first_error = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::string> cells{format_double(values[i])};
        cells.insert(cells.end(), rows[i].cells.begin(), rows[i].cells.end());
        cells.push_back(rows[i].status);
        out.row_cells(cells);
        if (rows[i].status != "ok") {
            ++failed;
            if (!first_error) first_error = rows[i].error_class;
        }
    }
    out.close();
    std::printf("%zu rows (%zu failed)\n", rows.size(), failed);
    if (failed == rows.size())
        switch (first_error) {
            case 2: throw model_error("every sweep row failed");
            case 4: throw instability_error("every sweep row failed");
            case 3: throw solver_error("every sweep row failed");
            default: throw std::runtime_error("every sweep row failed");
        }

    if (args.gnuplot) write_gnuplot(dir, "plot 'sweep.csv' using 1:2 with linespoints\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shock selection analysis for negative-diffusivity reaction-diffusion models"};
    app.require_subcommand(1);

    std::map<std::string, CommonArgs> common;
    auto add_common = [&](CLI::App* sub) {
        CommonArgs& c = common[sub->get_name()];
        sub->add_option("--config", c.config_path, "key=value config file");
        sub->add_option("--set", c.sets, "override one key (key=value, repeatable)");
        sub->add_option("--out", c.out_dir, "output directory (env SHOCKSELECT_OUT overrides)");
        sub->add_option("--workers", c.workers, "max concurrent sweep rows (0 = all cores)");
        sub->add_flag("--gnuplot-script", c.gnuplot, "also emit plot.gp next to the data");
    };
    add_common(app.add_subcommand("analyze", "shock positions of all selection rules"));
    add_common(app.add_subcommand("solve-a", "weight parameter for a target shock rule"));
    add_common(app.add_subcommand("wave-speed", "travelling-wave speed by phase-plane shooting"));
    add_common(app.add_subcommand("simulate", "time-dependent PDE run with shock tracking"));
    add_common(app.add_subcommand("sweep", "repeat a verb over a parameter range"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    const CommonArgs& args = common[sub->get_name()];
    try {
        KeyValueConfig cfg = resolve_config(args);
        if (sub->get_name() == "analyze") cmd_analyze(cfg, args);
        else if (sub->get_name() == "solve-a") cmd_solve_a(cfg, args);
        else if (sub->get_name() == "wave-speed") cmd_wave_speed(cfg, args);
        else if (sub->get_name() == "simulate") cmd_simulate(cfg, args);
        else cmd_sweep(cfg, args);
    } catch (const model_error& e) {
        std::fprintf(stderr, "model error: %s\n", e.what());
        return 2;
    } catch (const instability_error& e) {
        std::fprintf(stderr, "instability: %s\n", e.what());
        return 4;
    } catch (const solver_error& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
