#include "nemflow/flow.hpp"

#include <cmath>

#include "nemflow/bc.hpp"
#include "nemflow/norms.hpp"
#include "nemflow/operators.hpp"

namespace nemflow {

VelocityField tentative_velocity(const FlowState& state, const VelocityField& forcing, double dt,
                                 const Params& params, const LinearSolveConfig& cfg) {
    const Grid& g = state.v.grid;
    if (dt == 0.0) return state.v;
    if (!(dt > 0.0)) throw NumericalError("tentative_velocity: dt must be >= 0");

    const VelocityField adv = advect_velocity(state.v);
    const VelocityField gp = gradient_cc_to_mac(state.p);

    VelocityField rhs(g);
    const int iu1 = g.periodic() ? g.nx - 1 : g.nx - 1;
    const int iu0 = g.periodic() ? 0 : 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = iu0; i <= iu1; ++i)
            rhs.u(i, j) = state.v.u(i, j) + dt * (forcing.u(i, j) - adv.u(i, j) - gp.u(i, j));
    const int jv0 = g.periodic() ? 0 : 1, jv1 = g.ny - 1;
    for (int j = jv0; j <= jv1; ++j)
        for (int i = 0; i < g.nx; ++i)
            rhs.v(i, j) = state.v.v(i, j) + dt * (forcing.v(i, j) - adv.v(i, j) - gp.v(i, j));

    VelocityField star(g);
    star.u = solve_helmholtz_u(rhs.u, 1.0, params.nu * dt, g, cfg);
    star.v = solve_helmholtz_v(rhs.v, 1.0, params.nu * dt, g, cfg);
    apply_bc(star);
    if (!star.u.interior_finite() || !star.v.interior_finite())
        throw NumericalError("tentative_velocity: non-finite velocity");
    return star;
}

ProjectionResult pressure_project(const VelocityField& v_star, double dt, const ScalarField& p_prev,
                                  const LinearSolveConfig& cfg) {
    const Grid& g = v_star.grid;
    if (!(dt > 0.0)) throw NumericalError("pressure_project: dt must be > 0");

    ScalarField rhs = divergence(v_star);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) rhs.a(i, j) /= dt;

    ProjectionResult out;
    out.phi = solve_poisson(rhs, cfg);
    apply_bc(out.phi);

    const VelocityField gphi = gradient_cc_to_mac(out.phi);
    out.v = v_star;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) out.v.u(i, j) -= dt * gphi.u(i, j);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.v.v(i, j) -= dt * gphi.v(i, j);
    apply_bc(out.v);

    out.p = p_prev;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.p.a(i, j) += out.phi.a(i, j);
    apply_bc(out.p);
    return out;
}

FlowState flow_step(const FlowState& state, const VelocityField& forcing, double dt,
                    const Params& params, const LinearSolveConfig& cfg, double proj_tol) {
    const VelocityField star = tentative_velocity(state, forcing, dt, params, cfg);
    ProjectionResult proj = pressure_project(star, dt, state.p, cfg);

    FlowState next;
    next.v = std::move(proj.v);
    next.p = std::move(proj.p);

    const double div_inf = norm(divergence(next.v), NormKind::Linf);
    const double v_inf = norm(next.v, NormKind::Linf);
    if (!std::isfinite(v_inf)) throw NumericalError("flow_step: non-finite velocity");
    if (div_inf > proj_tol * (1.0 + v_inf))
        throw NumericalError("flow_step: projection left divergence " + std::to_string(div_inf));
    return next;
}

}  // namespace nemflow
