#include "nemflow/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "nemflow/bc.hpp"
#include "nemflow/norms.hpp"
#include "nemflow/operators.hpp"

namespace nemflow {

double stability_dt(const SimState& state, const Params& params, const Grid& grid, double cap) {
    double dt = cap;
    const double react = 0.5 / (params.gamma * params.potential.stiffness_bound());
    dt = std::min(dt, react);
    const double vmax = norm(state.flow.v, NormKind::Linf);
    if (vmax > 0.0) dt = std::min(dt, 0.5 * std::min(grid.hx, grid.hy) / vmax);
    return dt;
}

SimState coupled_step(const SimState& state, double dt, const SimContext& ctx,
                      const DirectorField* src_d, const VelocityField* src_v) {
    SimState next;
    next.t = state.t + dt;
    next.d = director_step(state.d, state.flow.v, dt, ctx.params, ctx.bd, ctx.dir, src_d);

    VelocityField forcing = elastic_force(next.d, ctx.params);
    if (src_v) {
        const Grid& g = forcing.grid;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) forcing.u(i, j) += src_v->u(i, j);
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) forcing.v(i, j) += src_v->v(i, j);
    }
    next.flow = flow_step(state.flow, forcing, dt, ctx.params, ctx.lin, ctx.proj_tol);
    return next;
}

EnergyRecord compute_record(const SimState& state, const SimContext& ctx) {
    const Params& p = ctx.params;
    EnergyRecord r;
    r.t = state.t;
    const double v_l2 = norm(state.flow.v, NormKind::L2);
    const double v_h1s = norm(state.flow.v, NormKind::H1semi);
    const double d_h1s = norm(state.d, NormKind::H1semi);

    double fint = 0.0;
    {
        const Grid& g = state.d.grid;
        double dv[3];
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                for (int c = 0; c < state.d.m; ++c) dv[c] = state.d.c[c](i, j);
                fint += p.potential.F(dv, state.d.m);
            }
        fint *= g.hx * g.hy;
    }

    auto res = director_residual(state.d, p.potential);
    r.kinetic = 0.5 * v_l2 * v_l2;
    r.elastic = 0.5 * p.lambda * d_h1s * d_h1s;
    r.potential = p.lambda * fint;
    r.total = r.kinetic + r.elastic + r.potential;
    r.dissip_visc = p.nu * v_h1s * v_h1s;
    r.dissip_dir = p.lambda * p.gamma * res.second * res.second;
    r.A = v_h1s * v_h1s + res.second * res.second;
    r.v_H1 = std::sqrt(v_l2 * v_l2 + v_h1s * v_h1s);
    r.residual_L2 = res.second;
    r.div_inf = norm(divergence(state.flow.v), NormKind::Linf);
    return r;
}

RunResult run_simulation(const SimState& initial, const SimContext& ctx,
                         const StoppingCriteria& stop, const DtPolicy& dt_policy,
                         int record_interval) {
    if (record_interval < 1) throw ConfigError("record_interval must be >= 1");
    ctx.params.validate();

    RunResult out;
    SimState state = initial;
    EnergyRecord rec = compute_record(state, ctx);
    out.records.push_back(rec);
    out.max_v_inf = norm(state.flow.v, NormKind::Linf);

    const double e0_scale = std::abs(rec.total);
    // Instability trip level: 1e-6 relative, with an absolute floor so that
    // zero-energy equilibria tolerate roundoff dust.
    const double energy_rise_limit = 1e-6 * std::max(e0_scale, 1e-8) + 1e-14 * (1.0 + e0_scale);
    double energy_prev = rec.total;
    bool last_recorded = true;

    const double t_slack = 1e-10 * std::max(1.0, stop.t_max);
    auto stop_reason = [&](const EnergyRecord& r) -> std::optional<std::string> {
        if (state.t >= stop.t_max - t_slack) return "t_max";
        if (stop.residual_target > 0.0 && r.v_H1 + r.residual_L2 <= stop.residual_target)
            return "residual_target";
        if (out.steps >= stop.max_steps) return "max_steps";
        return std::nullopt;
    };

    std::optional<std::string> reason = stop_reason(rec);
    while (!reason) {
        double dt = dt_policy.adaptive ? stability_dt(state, ctx.params, state.d.grid, dt_policy.cap)
                                       : dt_policy.value;
        // Land the final step on t_max exactly; the slack absorbs the
        // accumulated roundoff of t so no degenerate micro-step is taken.
        if (state.t + dt >= stop.t_max - t_slack) dt = stop.t_max - state.t;

        // Step with instability guard: retry at halved dt when the energy
        // jumps; transient startup with the explicit coupling needs this
        // occasionally.
        SimState next;
        double energy_next = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt <= 5; ++attempt) {
            try {
                next = coupled_step(state, dt, ctx);
            } catch (const NumericalError& e) {
                throw NumericalError("run: step " + std::to_string(out.steps + 1) + " at t=" +
                                     std::to_string(state.t) + " dt=" + std::to_string(dt) +
                                     " aborted: " + e.what());
            }
            EnergyRecord probe = compute_record(next, ctx);
            energy_next = probe.total;
            rec = probe;
            if (energy_next <= energy_prev + energy_rise_limit) {
                ok = true;
                break;
            }
            dt *= 0.5;
            ++out.retries;
        }
        if (!ok)
            throw NumericalError("run: energy increased at t=" + std::to_string(state.t) +
                                 " despite dt halving");

        state = next;
        energy_prev = energy_next;
        ++out.steps;
        out.max_v_inf = std::max(out.max_v_inf, norm(state.flow.v, NormKind::Linf));

        last_recorded = false;
        if (out.steps % record_interval == 0) {
            out.records.push_back(rec);
            last_recorded = true;
        }
        reason = stop_reason(rec);
    }

    if (!last_recorded) out.records.push_back(rec);
    out.final_state = std::move(state);
    out.termination = *reason;
    return out;
}

AuditReport energy_audit(const std::vector<EnergyRecord>& records) {
    if (records.size() < 2) throw ConfigError("energy_audit: need at least 2 records");
    AuditReport rep;
    rep.dt = records[1].t - records[0].t;
    if (!(rep.dt > 0.0)) throw ConfigError("energy_audit: records not increasing in t");
    for (size_t n = 0; n + 1 < records.size(); ++n) {
        const double dt_n = records[n + 1].t - records[n].t;
        if (std::abs(dt_n - rep.dt) > 1e-9 * rep.dt)
            throw ConfigError("energy_audit: non-uniform record spacing (record every step at fixed dt)");
        const double r = (records[n + 1].total - records[n].total) / rep.dt +
                         records[n + 1].dissip_visc + records[n + 1].dissip_dir;
        rep.residuals.push_back(r);
        rep.integrated += r * rep.dt;
        rep.integrated_abs += std::abs(r) * rep.dt;
        rep.max_abs = std::max(rep.max_abs, std::abs(r));
    }
    rep.energy_drop = records.front().total - records.back().total;
    return rep;
}

double audit_refinement_factor(const AuditReport& coarse, const AuditReport& fine) {
    if (fine.integrated_abs <= 0.0) return 0.0;
    return coarse.integrated_abs / fine.integrated_abs;
}

}  // namespace nemflow
