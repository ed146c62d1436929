#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nemflow/simulator.hpp"

namespace nemflow {

// Full run description.  Parsed from strict JSON: unknown keys are rejected,
// duplicate keys are a parse error, range violations name the offending key
// path.  Required keys: grid, potential, t_max.
struct SimConfig {
    int nx = 64, ny = 64;
    double Lx = 1.0, Ly = 1.0;
    BcMode bc_mode = BcMode::dirichlet;
    int m = 2;
    Params params;

    std::string initial_preset = "cavity";  // empty when initial_snapshot is set
    std::string initial_snapshot;

    // Boundary spec (dirichlet only): "preset" (trace of the preset director),
    // "initial" (extrapolated trace of the initial director), or a constant.
    std::string boundary_kind = "preset";
    std::vector<double> boundary_constant;

    DtPolicy dt;
    double t_max = 0.0;
    double residual_target = 0.0;
    long max_steps = 1000000000L;
    int record_interval = 10;

    LinearSolveConfig solver;
    std::string out_dir;
    std::string label;

    Grid make_grid() const { return Grid(nx, ny, Lx, Ly, bc_mode); }
};

SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::string& path);

// Canonical JSON echo with every default materialized; parsing it again gives
// an equivalent config.
std::string normalize_config(const SimConfig& cfg);

// Bundled scenarios: cavity, taylor-green, kink, convex, freeslip-box.
std::vector<std::string> preset_names();
SimConfig preset_default_config(const std::string& name);

// Initial fields of a preset on an arbitrary grid (velocity built from a
// discrete streamfunction, hence divergence-free to roundoff).
SimState preset_initial_state(const std::string& name, const Grid& g, int m);

// Boundary trace for a preset (exact analytic wall values).
BoundaryData preset_boundary(const std::string& name, const Grid& g, int m);

// Assemble the run inputs from a config: initial state (preset or snapshot)
// and boundary data (empty optional for non-dirichlet modes).
SimState build_initial_state(const SimConfig& cfg);
std::optional<BoundaryData> build_boundary(const SimConfig& cfg, const SimState& initial);

}  // namespace nemflow
