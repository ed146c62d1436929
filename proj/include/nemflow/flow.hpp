#pragma once

#include "nemflow/linsolve.hpp"
#include "nemflow/material.hpp"

namespace nemflow {

// Velocity plus the modified pressure (gauged to zero mean).  After every
// completed step the discrete divergence satisfies
//   ||div v||_inf <= proj_tol (1 + ||v||_inf)
// and wall-normal face values are exactly zero on bounded grids.
struct FlowState {
    VelocityField v;
    ScalarField p;

    FlowState() = default;
    explicit FlowState(const Grid& g) : v(g), p(g) {}
};

struct ProjectionResult {
    VelocityField v;
    ScalarField phi;  // pressure increment
    ScalarField p;
};

// Semi-implicit momentum predictor:
//   (I - nu dt lap) v* = v^n - dt advect(v^n) - dt grad p^n + dt forcing
// with the velocity BCs baked into the solve.  dt = 0 returns v^n unchanged.
VelocityField tentative_velocity(const FlowState& state, const VelocityField& forcing, double dt,
                                 const Params& params, const LinearSolveConfig& cfg = {});

// Incremental pressure correction: solve lap phi = div(v*)/dt, subtract
// dt grad phi, accumulate phi into p.
ProjectionResult pressure_project(const VelocityField& v_star, double dt, const ScalarField& p_prev,
                                  const LinearSolveConfig& cfg = {});

// Predictor + projection; checks the divergence invariant and finiteness.
FlowState flow_step(const FlowState& state, const VelocityField& forcing, double dt,
                    const Params& params, const LinearSolveConfig& cfg = {},
                    double proj_tol = 1e-10);

}  // namespace nemflow
