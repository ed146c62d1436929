#include "nemflow/director.hpp"

#include "nemflow/bc.hpp"
#include "nemflow/norms.hpp"
#include "nemflow/operators.hpp"

namespace nemflow {

DirectorField director_step(const DirectorField& d, const VelocityField& v, double dt,
                            const Params& params, const BoundaryData* bd,
                            const DirectorStepConfig& cfg, const DirectorField* source) {
    const Grid& g = d.grid;
    if (!(dt > 0.0)) throw NumericalError("director_step: dt must be > 0");
    const double gdt = params.gamma * dt;

    const DirectorField adv = advect_director(v, d);
    const DirectorField fd = potential_gradient(d, params.potential);

    DirectorField next(g, d.m);
    for (int c = 0; c < d.m; ++c) {
        Array2 rhs(g.nx, g.ny);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                rhs(i, j) = d.c[c](i, j) - dt * adv.c[c](i, j) - gdt * fd.c[c](i, j) +
                            (source ? dt * source->c[c](i, j) : 0.0);
        if (g.bc_mode == BcMode::dirichlet) {
            if (!bd) throw ConfigError("director_step: dirichlet mode requires boundary data");
            add_dirichlet_lift(rhs, *bd, c, gdt, g);
        }
        next.c[c] = solve_helmholtz_cc(rhs, 1.0, gdt, g, cfg.lin);
        if (!next.c[c].interior_finite()) throw NumericalError("director_step: non-finite director");
    }
    apply_bc(next, g.bc_mode == BcMode::dirichlet ? bd : nullptr);
    return next;
}

std::pair<DirectorField, double> director_residual(const DirectorField& d, const Potential& pot) {
    const Grid& g = d.grid;
    DirectorField r = laplacian(d);
    const DirectorField fd = potential_gradient(d, pot);
    for (int c = 0; c < d.m; ++c)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) r.c[c](i, j) = -r.c[c](i, j) + fd.c[c](i, j);
    const double n = norm(r, NormKind::L2);
    return {std::move(r), n};
}

}  // namespace nemflow
