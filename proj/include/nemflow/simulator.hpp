#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nemflow/director.hpp"
#include "nemflow/flow.hpp"

namespace nemflow {

struct SimState {
    double t = 0.0;
    FlowState flow;
    DirectorField d;

    SimState() = default;
    SimState(const Grid& g, int m) : flow(g), d(g, m) {}
};

// Per-step diagnostics.  total = kinetic + elastic + potential is the
// Lyapunov functional; dissip_visc + dissip_dir is what its derivative should
// balance; A monitors the higher-order decay.
struct EnergyRecord {
    double t = 0.0;
    double kinetic = 0.0;      // 1/2 ||v||^2
    double elastic = 0.0;      // lambda/2 ||grad d||^2
    double potential = 0.0;    // lambda int F(d)
    double total = 0.0;
    double dissip_visc = 0.0;  // nu ||grad v||^2
    double dissip_dir = 0.0;   // lambda gamma ||lap d - f(d)||^2
    double A = 0.0;            // ||grad v||^2 + ||lap d - f(d)||^2
    double v_H1 = 0.0;
    double residual_L2 = 0.0;  // ||-lap d + f(d)||
    double div_inf = 0.0;
};

struct StoppingCriteria {
    double t_max = 0.0;
    double residual_target = 0.0;  // stop when v_H1 + residual_L2 <= target; 0 disables
    long max_steps = 1000000000L;
};

struct DtPolicy {
    bool adaptive = true;
    double value = 1e-3;  // fixed step
    double cap = 1e-2;    // adaptive cap
};

// Everything a step needs besides the state itself.
struct SimContext {
    Params params;
    const BoundaryData* bd = nullptr;  // required for dirichlet grids
    LinearSolveConfig lin;
    DirectorStepConfig dir;
    double proj_tol = 1e-10;
};

// Largest stable step: advective CFL at safety 0.5 against the max face
// speed, the explicit-reaction bound 0.5 / (gamma * |f'| bound), and the
// user cap.  With v = 0 the advective bound drops out.
double stability_dt(const SimState& state, const Params& params, const Grid& grid, double cap);

// Substep order: director with v^n, elastic force from d^{n+1}, then the flow
// step.  The transport term then pairs against the forcing work inside one
// step, which is what keeps the energy audit residual at O(dt).  Optional
// sources feed the manufactured-solution harness.
SimState coupled_step(const SimState& state, double dt, const SimContext& ctx,
                      const DirectorField* src_d = nullptr, const VelocityField* src_v = nullptr);

EnergyRecord compute_record(const SimState& state, const SimContext& ctx);

struct RunResult {
    std::vector<EnergyRecord> records;
    SimState final_state;
    std::string termination;  // "t_max" | "residual_target" | "max_steps"
    long steps = 0;
    long retries = 0;  // dt halvings forced by the instability guard
    double max_v_inf = 0.0;
};

// Deterministic time loop.  Records are emitted at step 0, every
// record_interval-th step, and at termination.  A per-step energy increase
// beyond 1e-6 relative triggers dt halving with retry (5 attempts), then
// NumericalError.
RunResult run_simulation(const SimState& initial, const SimContext& ctx,
                         const StoppingCriteria& stop, const DtPolicy& dt_policy,
                         int record_interval);

// Discrete check of the dissipation balance on consecutive-step records:
//   r_n = (E_{n+1} - E_n)/dt + dissip_visc_{n+1} + dissip_dir_{n+1}.
struct AuditReport {
    std::vector<double> residuals;
    double dt = 0.0;
    double integrated_abs = 0.0;  // sum |r_n| dt
    double integrated = 0.0;      // sum r_n dt (signed)
    double max_abs = 0.0;
    double energy_drop = 0.0;     // E_first - E_last
};

AuditReport energy_audit(const std::vector<EnergyRecord>& records);

// Refinement hook: ratio of integrated |residual| between a run and its
// half-step rerun; first-order splitting puts this near 2.
double audit_refinement_factor(const AuditReport& coarse, const AuditReport& fine);

}  // namespace nemflow
