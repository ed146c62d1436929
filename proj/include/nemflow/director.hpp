#pragma once

#include <utility>

#include "nemflow/linsolve.hpp"
#include "nemflow/material.hpp"

namespace nemflow {

struct DirectorStepConfig {
    LinearSolveConfig lin;  // rel_tol for the componentwise Helmholtz solves
};

// One semi-implicit step of the director equation:
//   (I - gamma dt lap) d^{n+1} = d^n - dt (v . grad) d^n - gamma dt f(d^n) + dt source
// Diffusion implicit, reaction and transport explicit; the Dirichlet trace is
// re-imposed exactly through the ghost layer every step.
DirectorField director_step(const DirectorField& d, const VelocityField& v, double dt,
                            const Params& params, const BoundaryData* bd,
                            const DirectorStepConfig& cfg = {},
                            const DirectorField* source = nullptr);

// Residual of the stationary problem: field -lap d + f(d) and its L2 norm.
std::pair<DirectorField, double> director_residual(const DirectorField& d, const Potential& pot);

}  // namespace nemflow
