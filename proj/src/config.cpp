#include "nemflow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nemflow/bc.hpp"
#include "nemflow/snapshot.hpp"

namespace nemflow {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

json parse_strict_json(const std::string& text) {
    // Track object keys per nesting level so duplicates fail instead of
    // silently overwriting a physical parameter.
    std::vector<std::set<std::string>> stack;
    json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t ev, json& parsed) {
        if (ev == json::parse_event_t::object_start) {
            stack.emplace_back();
        } else if (ev == json::parse_event_t::object_end) {
            stack.pop_back();
        } else if (ev == json::parse_event_t::key) {
            const std::string key = parsed.get<std::string>();
            if (!stack.back().insert(key).second)
                throw ConfigError("config: duplicate key '" + key + "'");
        }
        return true;
    };
    try {
        return json::parse(text, cb);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
    if (!obj.is_object()) throw ConfigError("config: " + path + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key '" + (path.empty() ? it.key() : path + "." + it.key()) + "'");
    for (const auto& k : required)
        if (!obj.contains(k))
            throw ConfigError("config: missing required key '" + (path.empty() ? k : path + "." + k) + "'");
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("config: " + path + key + " must be a number");
    return v.get<double>();
}

double get_positive(const json& obj, const std::string& path, const std::string& key) {
    const double v = get_number(obj, path, key);
    if (!(v > 0.0)) throw ConfigError("config: " + path + key + " must be > 0");
    return v;
}

int get_int(const json& obj, const std::string& path, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError("config: " + path + key + " must be an integer");
    return v.get<int>();
}

// ---- presets --------------------------------------------------------------

struct PresetDef {
    // Streamfunction at nodes (0 for quiescent starts).
    double (*psi)(double x, double y, const Grid& g);
    // Director component c at (x, y); m=3 runs get a zero third component.
    double (*dir)(double x, double y, int c, const Grid& g, const Potential& pot);
    void (*defaults)(SimConfig& cfg);
};

double cavity_angle(double x, double y) {
    return 0.4 + 0.3 * x + 0.2 * y + 0.35 * std::sin(kPi * x) * std::sin(kPi * y);
}

const PresetDef kCavity = {
    [](double x, double y, const Grid&) {
        const double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
        return 0.4 * sx * sx * sy * sy;
    },
    [](double x, double y, int c, const Grid&, const Potential&) {
        const double a = cavity_angle(x, y);
        return c == 0 ? std::cos(a) : (c == 1 ? std::sin(a) : 0.0);
    },
    [](SimConfig& cfg) {
        cfg.bc_mode = BcMode::dirichlet;
        cfg.params.potential = Potential::ginzburg_landau(0.25);
        cfg.t_max = 50.0;
        cfg.residual_target = 1e-6;
        cfg.dt.adaptive = true;
        cfg.dt.cap = 5e-3;
    },
};

const PresetDef kTaylorGreen = {
    [](double x, double y, const Grid&) { return std::sin(x) * std::sin(y); },
    [](double, double, int c, const Grid&, const Potential&) { return c == 0 ? 1.0 : 0.0; },
    [](SimConfig& cfg) {
        cfg.bc_mode = BcMode::periodic;
        cfg.Lx = 2.0 * kPi;
        cfg.Ly = 2.0 * kPi;
        cfg.params.nu = 0.1;
        cfg.params.lambda = 0.0;
        cfg.params.potential = Potential::ginzburg_landau(1.0);
        cfg.t_max = 1.0;
        cfg.dt.adaptive = false;
        cfg.dt.value = 2e-3;
        cfg.record_interval = 10;
    },
};

const PresetDef kKink = {
    [](double, double, const Grid&) { return 0.0; },
    [](double x, double, int c, const Grid& g, const Potential& pot) {
        const double eta = pot.kind == Potential::Kind::ginzburg_landau ? pot.eta : 0.25;
        const double xi = (x - 0.5 * g.Lx) / (std::sqrt(2.0) * eta);
        return c == 0 ? std::tanh(xi) : 0.0;
    },
    [](SimConfig& cfg) {
        cfg.bc_mode = BcMode::dirichlet;
        cfg.params.potential = Potential::ginzburg_landau(0.25);
        cfg.t_max = 10.0;
        cfg.residual_target = 1e-8;
        cfg.dt.adaptive = true;
        cfg.dt.cap = 5e-3;
    },
};

const PresetDef kConvex = {
    [](double x, double y, const Grid&) {
        const double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
        return 0.2 * sx * sx * sy * sy;
    },
    [](double x, double y, int c, const Grid&, const Potential&) {
        const double w = 0.8 * std::sin(kPi * x) * std::sin(kPi * y);
        return c == 0 ? 0.8 * w : (c == 1 ? -0.6 * w : 0.0);
    },
    [](SimConfig& cfg) {
        cfg.bc_mode = BcMode::dirichlet;
        cfg.params.potential = Potential::quadratic(4.0);
        cfg.t_max = 6.0;
        cfg.dt.adaptive = false;
        cfg.dt.value = 2e-3;
        cfg.record_interval = 5;
    },
};

const PresetDef kFreeslipBox = {
    [](double x, double y, const Grid&) { return 0.3 * std::sin(kPi * x) * std::sin(kPi * y); },
    [](double x, double y, int c, const Grid&, const Potential&) {
        const double a = 0.5 + 0.3 * std::cos(kPi * x) * std::cos(kPi * y);
        return c == 0 ? std::cos(a) : (c == 1 ? std::sin(a) : 0.0);
    },
    [](SimConfig& cfg) {
        cfg.bc_mode = BcMode::free_slip;
        cfg.params.potential = Potential::ginzburg_landau(0.25);
        cfg.t_max = 50.0;
        cfg.residual_target = 1e-6;
        cfg.dt.adaptive = true;
        cfg.dt.cap = 5e-3;
    },
};

const PresetDef* find_preset(const std::string& name) {
    if (name == "cavity") return &kCavity;
    if (name == "taylor-green") return &kTaylorGreen;
    if (name == "kink") return &kKink;
    if (name == "convex") return &kConvex;
    if (name == "freeslip-box") return &kFreeslipBox;
    return nullptr;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"cavity", "taylor-green", "kink", "convex", "freeslip-box"};
}

SimConfig preset_default_config(const std::string& name) {
    const PresetDef* def = find_preset(name);
    if (!def) throw ConfigError("unknown preset '" + name + "'");
    SimConfig cfg;
    cfg.initial_preset = name;
    def->defaults(cfg);
    return cfg;
}

SimState preset_initial_state(const std::string& name, const Grid& g, int m) {
    const PresetDef* def = find_preset(name);
    if (!def) throw ConfigError("unknown preset '" + name + "'");
    SimState st(g, m);
    SimConfig probe = preset_default_config(name);

    // Velocity from the node streamfunction: exactly divergence-free and
    // wall-respecting since psi is constant (zero) along walls.
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            st.flow.v.u(i, j) =
                (def->psi(g.xn(i), g.yn(j + 1), g) - def->psi(g.xn(i), g.yn(j), g)) / g.hy;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            st.flow.v.v(i, j) =
                -(def->psi(g.xn(i + 1), g.yn(j), g) - def->psi(g.xn(i), g.yn(j), g)) / g.hx;

    for (int c = 0; c < m; ++c)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                st.d.c[c](i, j) = def->dir(g.xc(i), g.yc(j), c, g, probe.params.potential);
    return st;
}

BoundaryData preset_boundary(const std::string& name, const Grid& g, int m) {
    const PresetDef* def = find_preset(name);
    if (!def) throw ConfigError("unknown preset '" + name + "'");
    SimConfig probe = preset_default_config(name);
    return BoundaryData::from_function(
        g, m, [&](double x, double y, int c) { return def->dir(x, y, c, g, probe.params.potential); });
}

// ---- parsing ---------------------------------------------------------------

SimConfig parse_config(const std::string& text) {
    json j = parse_strict_json(text);
    require_keys(j, "",
                 {"grid", "bc_mode", "m", "params", "potential", "initial", "boundary", "dt",
                  "t_max", "residual_target", "max_steps", "record_interval", "solver", "out_dir",
                  "label"},
                 {"grid", "potential", "t_max"});
    SimConfig cfg;

    const json& gj = j.at("grid");
    require_keys(gj, "grid", {"nx", "ny", "Lx", "Ly"}, {"nx", "ny"});
    cfg.nx = get_int(gj, "grid.", "nx");
    cfg.ny = get_int(gj, "grid.", "ny");
    if (cfg.nx < 4 || cfg.ny < 4) throw ConfigError("config: grid.nx and grid.ny must be >= 4");
    cfg.Lx = gj.contains("Lx") ? get_positive(gj, "grid.", "Lx") : 1.0;
    cfg.Ly = gj.contains("Ly") ? get_positive(gj, "grid.", "Ly") : 1.0;

    if (j.contains("bc_mode")) cfg.bc_mode = bc_mode_from_string(j.at("bc_mode").get<std::string>());
    if (j.contains("m")) {
        cfg.m = get_int(j, "", "m");
        if (cfg.m != 2 && cfg.m != 3) throw ConfigError("config: m must be 2 or 3");
    }

    if (j.contains("params")) {
        const json& pj = j.at("params");
        require_keys(pj, "params", {"nu", "lambda", "gamma"}, {});
        if (pj.contains("nu")) cfg.params.nu = get_positive(pj, "params.", "nu");
        if (pj.contains("lambda")) {
            cfg.params.lambda = get_number(pj, "params.", "lambda");
            if (cfg.params.lambda < 0.0) throw ConfigError("config: params.lambda must be >= 0");
        }
        if (pj.contains("gamma")) cfg.params.gamma = get_positive(pj, "params.", "gamma");
    }

    {
        const json& pj = j.at("potential");
        require_keys(pj, "potential", {"type", "eta", "kappa"}, {"type"});
        const std::string type = pj.at("type").get<std::string>();
        if (type == "gl") {
            cfg.params.potential = Potential::ginzburg_landau(
                pj.contains("eta") ? get_positive(pj, "potential.", "eta") : 1.0);
            if (pj.contains("kappa")) throw ConfigError("config: potential.kappa not valid for type gl");
        } else if (type == "quadratic") {
            cfg.params.potential = Potential::quadratic(
                pj.contains("kappa") ? get_positive(pj, "potential.", "kappa") : 1.0);
            if (pj.contains("eta"))
                throw ConfigError("config: potential.eta not valid for type quadratic");
        } else {
            throw ConfigError("config: potential.type must be 'gl' or 'quadratic'");
        }
    }

    if (j.contains("initial")) {
        const json& ij = j.at("initial");
        require_keys(ij, "initial", {"preset", "snapshot"}, {});
        if (ij.contains("preset") && ij.contains("snapshot"))
            throw ConfigError("config: initial.preset and initial.snapshot are exclusive");
        if (ij.contains("snapshot")) {
            cfg.initial_snapshot = ij.at("snapshot").get<std::string>();
            cfg.initial_preset.clear();
        } else if (ij.contains("preset")) {
            cfg.initial_preset = ij.at("preset").get<std::string>();
            if (!find_preset(cfg.initial_preset))
                throw ConfigError("config: unknown initial.preset '" + cfg.initial_preset + "'");
        }
    }

    if (j.contains("boundary")) {
        const json& bj = j.at("boundary");
        require_keys(bj, "boundary", {"kind", "constant"}, {"kind"});
        cfg.boundary_kind = bj.at("kind").get<std::string>();
        if (cfg.boundary_kind == "constant") {
            if (!bj.contains("constant"))
                throw ConfigError("config: boundary.constant values required");
            cfg.boundary_constant = bj.at("constant").get<std::vector<double>>();
            if (static_cast<int>(cfg.boundary_constant.size()) != cfg.m)
                throw ConfigError("config: boundary.constant needs m values");
        } else if (cfg.boundary_kind != "preset" && cfg.boundary_kind != "initial") {
            throw ConfigError("config: boundary.kind must be preset|initial|constant");
        }
        if (cfg.bc_mode != BcMode::dirichlet)
            throw ConfigError("config: boundary data is only valid for dirichlet bc_mode");
    }

    if (j.contains("dt")) {
        const json& dj = j.at("dt");
        require_keys(dj, "dt", {"policy", "value", "cap"}, {"policy"});
        const std::string policy = dj.at("policy").get<std::string>();
        if (policy == "fixed") {
            cfg.dt.adaptive = false;
            cfg.dt.value = get_positive(dj, "dt.", "value");
        } else if (policy == "adaptive") {
            cfg.dt.adaptive = true;
            if (dj.contains("cap")) cfg.dt.cap = get_positive(dj, "dt.", "cap");
        } else {
            throw ConfigError("config: dt.policy must be 'fixed' or 'adaptive'");
        }
    }

    cfg.t_max = get_number(j, "", "t_max");
    if (cfg.t_max < 0.0) throw ConfigError("config: t_max must be >= 0");
    if (j.contains("residual_target")) {
        cfg.residual_target = get_number(j, "", "residual_target");
        if (cfg.residual_target < 0.0) throw ConfigError("config: residual_target must be >= 0");
    }
    if (j.contains("max_steps")) {
        cfg.max_steps = j.at("max_steps").get<long>();
        if (cfg.max_steps < 0) throw ConfigError("config: max_steps must be >= 0");
    }
    if (j.contains("record_interval")) {
        cfg.record_interval = get_int(j, "", "record_interval");
        if (cfg.record_interval < 1) throw ConfigError("config: record_interval must be >= 1");
    }
    if (j.contains("solver")) {
        const json& sj = j.at("solver");
        require_keys(sj, "solver", {"method", "rel_tol", "max_iterations"}, {});
        if (sj.contains("method")) cfg.solver.method = sj.at("method").get<std::string>();
        if (sj.contains("rel_tol")) cfg.solver.rel_tol = get_positive(sj, "solver.", "rel_tol");
        if (sj.contains("max_iterations")) cfg.solver.max_iterations = get_int(sj, "solver.", "max_iterations");
        cfg.solver.validate();
    }
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("label")) cfg.label = j.at("label").get<std::string>();

    if (cfg.bc_mode != BcMode::dirichlet && cfg.boundary_kind == "constant")
        throw ConfigError("config: boundary data is only valid for dirichlet bc_mode");
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string normalize_config(const SimConfig& cfg) {
    json j;
    j["grid"] = {{"nx", cfg.nx}, {"ny", cfg.ny}, {"Lx", cfg.Lx}, {"Ly", cfg.Ly}};
    j["bc_mode"] = to_string(cfg.bc_mode);
    j["m"] = cfg.m;
    j["params"] = {{"nu", cfg.params.nu}, {"lambda", cfg.params.lambda}, {"gamma", cfg.params.gamma}};
    if (cfg.params.potential.kind == Potential::Kind::ginzburg_landau)
        j["potential"] = {{"type", "gl"}, {"eta", cfg.params.potential.eta}};
    else
        j["potential"] = {{"type", "quadratic"}, {"kappa", cfg.params.potential.kappa}};
    if (!cfg.initial_snapshot.empty())
        j["initial"] = {{"snapshot", cfg.initial_snapshot}};
    else
        j["initial"] = {{"preset", cfg.initial_preset}};
    if (cfg.bc_mode == BcMode::dirichlet) {
        if (cfg.boundary_kind == "constant")
            j["boundary"] = {{"kind", "constant"}, {"constant", cfg.boundary_constant}};
        else
            j["boundary"] = {{"kind", cfg.boundary_kind}};
    }
    if (cfg.dt.adaptive)
        j["dt"] = {{"policy", "adaptive"}, {"cap", cfg.dt.cap}};
    else
        j["dt"] = {{"policy", "fixed"}, {"value", cfg.dt.value}};
    j["t_max"] = cfg.t_max;
    j["residual_target"] = cfg.residual_target;
    j["max_steps"] = cfg.max_steps;
    j["record_interval"] = cfg.record_interval;
    j["solver"] = {{"method", cfg.solver.method},
                   {"rel_tol", cfg.solver.rel_tol},
                   {"max_iterations", cfg.solver.max_iterations}};
    if (!cfg.out_dir.empty()) j["out_dir"] = cfg.out_dir;
    if (!cfg.label.empty()) j["label"] = cfg.label;
    return j.dump(2);
}

SimState build_initial_state(const SimConfig& cfg) {
    const Grid g = cfg.make_grid();
    if (!cfg.initial_snapshot.empty()) {
        SimState st = snapshot_read(cfg.initial_snapshot);
        if (!(st.d.grid == g))
            throw ConfigError("config: snapshot grid does not match configured grid");
        if (st.d.m != cfg.m) throw ConfigError("config: snapshot m does not match configured m");
        return st;
    }
    return preset_initial_state(cfg.initial_preset, g, cfg.m);
}

std::optional<BoundaryData> build_boundary(const SimConfig& cfg, const SimState& initial) {
    if (cfg.bc_mode != BcMode::dirichlet) return std::nullopt;
    const Grid g = cfg.make_grid();
    if (cfg.boundary_kind == "constant") {
        BoundaryData bd(g, cfg.m);
        return BoundaryData::from_function(
            g, cfg.m, [&](double, double, int c) { return cfg.boundary_constant[c]; });
    }
    if (cfg.boundary_kind == "preset") {
        if (cfg.initial_preset.empty())
            throw ConfigError("config: boundary.kind 'preset' needs initial.preset (use 'initial')");
        return preset_boundary(cfg.initial_preset, g, cfg.m);
    }
    // "initial": linear extrapolation of the two nearest cell rows.
    BoundaryData bd(g, cfg.m);
    const DirectorField& d = initial.d;
    for (int c = 0; c < cfg.m; ++c) {
        for (int j = 0; j < g.ny; ++j) {
            bd.at_left(j, c) = 1.5 * d.c[c](0, j) - 0.5 * d.c[c](1, j);
            bd.at_right(j, c) = 1.5 * d.c[c](g.nx - 1, j) - 0.5 * d.c[c](g.nx - 2, j);
        }
        for (int i = 0; i < g.nx; ++i) {
            bd.at_bottom(i, c) = 1.5 * d.c[c](i, 0) - 0.5 * d.c[c](i, 1);
            bd.at_top(i, c) = 1.5 * d.c[c](i, g.ny - 1) - 0.5 * d.c[c](i, g.ny - 2);
        }
    }
    return bd;
}

}  // namespace nemflow
