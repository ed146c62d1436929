#include "nemflow/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nemflow/bc.hpp"
#include "nemflow/config.hpp"
#include "nemflow/equilibrium.hpp"
#include "nemflow/mms.hpp"
#include "nemflow/records_io.hpp"
#include "nemflow/snapshot.hpp"

namespace nemflow {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct PreparedRun {
    SimConfig cfg;
    SimState initial;
    std::optional<BoundaryData> bd;
    SimContext ctx;
};

PreparedRun prepare(const std::string& config_path) {
    PreparedRun r;
    r.cfg = load_config(config_path);
    r.initial = build_initial_state(r.cfg);
    r.bd = build_boundary(r.cfg, r.initial);
    apply_bc(r.initial.flow.v);
    apply_bc(r.initial.flow.p);
    apply_bc(r.initial.d, r.bd ? &*r.bd : nullptr);
    r.ctx.params = r.cfg.params;
    r.ctx.lin = r.cfg.solver;
    r.ctx.dir.lin = r.cfg.solver;
    return r;
}

void write_manifest(const fs::path& dir, const SimConfig& cfg, const json& extra) {
    json m;
    m["config"] = json::parse(normalize_config(cfg));
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
    std::ofstream f(dir / "run.json");
    if (!f) throw IoError("cannot write manifest in " + dir.string());
    f << m.dump(2) << "\n";
}

std::string resolve_out(const std::string& cli_out, const SimConfig& cfg) {
    if (!cli_out.empty()) return cli_out;
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    throw ConfigError("no output directory: pass --out or set out_dir in the config");
}

int cmd_simulate(const std::string& config_path, const std::string& out_arg) {
    auto t0 = std::chrono::steady_clock::now();
    PreparedRun r = prepare(config_path);
    r.ctx.bd = r.bd ? &*r.bd : nullptr;
    const std::string out_dir = resolve_out(out_arg, r.cfg);

    StoppingCriteria stop;
    stop.t_max = r.cfg.t_max;
    stop.residual_target = r.cfg.residual_target;
    stop.max_steps = r.cfg.max_steps;

    RunResult res;
    try {
        res = run_simulation(r.initial, r.ctx, stop, r.cfg.dt, r.cfg.record_interval);
    } catch (const NumericalError& e) {
        // The manifest is written even for aborted runs so the failure is an
        // inspectable artifact.
        fs::create_directories(out_dir);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(out_dir, r.cfg,
                       json{{"termination", std::string("error: ") + e.what()},
                            {"wall_time_s", wall}});
        throw;
    }

    fs::create_directories(out_dir);
    write_records(res.records, (fs::path(out_dir) / "records.csv").string());
    snapshot_write(res.final_state, (fs::path(out_dir) / "final.nemq").string());
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir, r.cfg,
                   json{{"termination", res.termination},
                        {"steps", res.steps},
                        {"final_t", res.final_state.t},
                        {"max_v_inf", res.max_v_inf},
                        {"wall_time_s", wall},
                        {"records", "records.csv"},
                        {"snapshot", "final.nemq"}});
    std::cout << "simulate: " << res.steps << " steps to t=" << res.final_state.t << " ("
              << res.termination << "), " << res.records.size() << " records\n";
    return 0;
}

int cmd_steady(const std::string& config_path, const std::string& seed, const std::string& out_arg) {
    auto t0 = std::chrono::steady_clock::now();
    PreparedRun r = prepare(config_path);
    const std::string out_dir = resolve_out(out_arg, r.cfg);

    DirectorField seed_d = r.initial.d;
    if (!seed.empty()) {
        if (fs::exists(seed)) {
            SimState snap = snapshot_read(seed);
            if (!(snap.d.grid == r.initial.d.grid) || snap.d.m != r.cfg.m)
                throw ConfigError("steady: seed snapshot does not match configured grid/m");
            seed_d = snap.d;
        } else {
            seed_d = preset_initial_state(seed, r.cfg.make_grid(), r.cfg.m).d;
        }
    }

    SteadySolveOptions opts;
    opts.lin.rel_tol = std::min(r.cfg.solver.rel_tol, 1e-10);
    SteadySolution sol = solve_steady(seed_d, r.bd ? &*r.bd : nullptr, r.cfg.params.potential, opts);

    fs::create_directories(out_dir);
    SimState out_state(r.cfg.make_grid(), r.cfg.m);
    out_state.d = sol.d_inf;
    snapshot_write(out_state, (fs::path(out_dir) / "steady.nemq").string());
    json sj{{"residual_norm", sol.residual_norm},
            {"iterations", sol.iterations},
            {"method", sol.method},
            {"energy", sol.energy}};
    {
        std::ofstream f(fs::path(out_dir) / "steady.json");
        f << sj.dump(2) << "\n";
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json extra = sj;
    extra["termination"] = "steady";
    extra["wall_time_s"] = wall;
    write_manifest(out_dir, r.cfg, extra);
    std::cout << "steady: residual " << sol.residual_norm << " after " << sol.iterations
              << " newton iterations (" << sol.method << "), E = " << sol.energy << "\n";
    return 0;
}

int cmd_fit_rate(const std::string& records_path, const std::string& window,
                 const std::string& target, double einf, bool have_einf) {
    const auto records = read_records(records_path);
    if (records.size() < 2) throw ConfigError("fit-rate: insufficient points");

    double lo = records.front().t, hi = records.back().t;
    if (!window.empty()) {
        const auto comma = window.find(',');
        if (comma == std::string::npos) throw ConfigError("fit-rate: --window expects a,b");
        lo = std::stod(window.substr(0, comma));
        hi = std::stod(window.substr(comma + 1));
    }

    if (target == "state") {
        std::vector<double> t, y;
        for (const auto& r : records) {
            t.push_back(r.t);
            y.push_back(r.v_H1 + r.residual_L2);
        }
        RateFit fit = fit_decay(t, y, lo, hi);
        std::cout << "target: state (v_H1 + residual_L2)\n"
                  << "model: " << fit.model << "\nexponent: " << fit.exponent
                  << "\nimplied_theta: " << fit.implied_theta << "\nfit_rms: " << fit.fit_rms
                  << "\nwindow: [" << fit.t_lo << ", " << fit.t_hi << "]\n"
                  << "exponential: kappa=" << fit.exp_kappa << " rms=" << fit.exp_rms
                  << "\nalgebraic: beta=" << fit.alg_beta << " rms=" << fit.alg_rms << "\n";
        return 0;
    }
    if (target != "gap") throw ConfigError("fit-rate: --target must be gap or state");

    if (!have_einf) einf = records.back().total;  // steady-tail proxy
    GapSeries gap = lyapunov_gap(records, einf);
    if (window.empty()) {
        // Default window: clip the trailing quadrature-noise floor.
        const auto [wlo, whi] = gap_fit_window(gap);
        lo = wlo;
        hi = whi;
    }
    RateFit fit = fit_decay(gap.t, gap.gap, lo, hi);
    std::cout << "target: gap (E(t) - E_inf), E_inf = " << einf << "\n"
              << "model: " << fit.model << "\nexponent: " << fit.exponent
              << "\nimplied_theta: " << fit.implied_theta << "\nfit_rms: " << fit.fit_rms
              << "\nwindow: [" << fit.t_lo << ", " << fit.t_hi << "]\n"
              << "exponential: kappa=" << fit.exp_kappa << " rms=" << fit.exp_rms
              << "\nalgebraic: beta=" << fit.alg_beta << " rms=" << fit.alg_rms << "\n";
    ThetaEstimate th = estimate_theta(gap);
    std::cout << "theta: " << th.theta << " (slope " << th.slope << ", rms " << th.rms << ", ci +-"
              << th.ci << ", " << th.points << " points on [" << th.t_lo << ", " << th.t_hi
              << "])\n";
    return 0;
}

int cmd_audit(const std::string& records_path) {
    const auto records = read_records(records_path);
    AuditReport rep = energy_audit(records);
    std::cout << "steps: " << rep.residuals.size() << "\ndt: " << rep.dt
              << "\nintegrated |residual|: " << rep.integrated_abs
              << "\nintegrated residual (signed): " << rep.integrated
              << "\nmax |residual|: " << rep.max_abs << "\nenergy drop: " << rep.energy_drop
              << "\nrelative (|integral| / drop): "
              << (rep.energy_drop != 0.0 ? rep.integrated_abs / rep.energy_drop : 0.0) << "\n";
    return 0;
}

int cmd_mms(const std::string& case_name) {
    const MmsCase& mc = mms_case(case_name);
    MmsSpatialResult sp;
    MmsTemporalResult tp;
    if (case_name == "linear") {
        sp = mms_spatial_study(mc, {16, 32}, 0.01, 1e-3);
        tp = mms_temporal_study(mc, 16, 0.05, {4e-3, 2e-3});
    } else {
        sp = mms_spatial_study(mc, {32, 64, 128}, 0.02, 2e-4);
        tp = mms_temporal_study(mc, 64, 0.2, {4e-3, 2e-3, 1e-3});
    }
    std::cout << format_mms_tables(mc, sp, tp);
    return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
    CLI::App app{"nemflow: 2D nematic liquid-crystal flow workbench"};
    app.require_subcommand(1);

    std::string config_path, out_dir, seed, records_path, window, target = "gap", case_name;
    double einf = 0.0;

    auto* sim = app.add_subcommand("simulate", "run a configured simulation");
    sim->add_option("--config", config_path, "JSON config path")->required();
    sim->add_option("--out", out_dir, "output directory (default: out_dir from the config)");

    auto* steady = app.add_subcommand("steady", "solve the stationary director problem");
    steady->add_option("--config", config_path, "JSON config path")->required();
    steady->add_option("--seed", seed, "seed: snapshot path or preset name (default: config initial)");
    steady->add_option("--out", out_dir, "output directory (default: out_dir from the config)");

    auto* fit = app.add_subcommand("fit-rate", "fit decay laws on a records CSV");
    fit->add_option("--records", records_path, "records CSV path")->required();
    fit->add_option("--window", window, "fit window a,b in time");
    fit->add_option("--target", target, "gap | state (default gap)");
    auto* einf_opt = fit->add_option("--einf", einf, "steady-state energy for the gap target");

    auto* audit = app.add_subcommand("audit", "energy-law audit of a records CSV");
    audit->add_option("--records", records_path, "records CSV path")->required();

    auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
    mms->add_option("--case", case_name, "case name: trig | linear")->required();

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir);
        if (steady->parsed()) return cmd_steady(config_path, seed, out_dir);
        if (fit->parsed())
            return cmd_fit_rate(records_path, window, target, einf, einf_opt->count() > 0);
        if (audit->parsed()) return cmd_audit(records_path);
        if (mms->parsed()) return cmd_mms(case_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace nemflow
