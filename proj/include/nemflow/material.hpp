#pragma once

#include "nemflow/fields.hpp"
#include "nemflow/potential.hpp"

namespace nemflow {

// Physical parameters: nu viscosity, lambda kinetic/elastic coupling, gamma
// relaxation rate.  lambda = 0 decouples the flow from the director (used by
// the pure-flow benchmarks), the others stay strictly positive.
struct Params {
    double nu = 1.0;
    double lambda = 1.0;
    double gamma = 1.0;
    Potential potential;

    void validate() const {
        if (!(nu > 0.0)) throw ConfigError("params.nu must be > 0");
        if (!(lambda >= 0.0)) throw ConfigError("params.lambda must be >= 0");
        if (!(gamma > 0.0)) throw ConfigError("params.gamma must be > 0");
    }
};

// Pointwise f(d) at cell centers.
DirectorField potential_gradient(const DirectorField& d, const Potential& pot);

// Bulk energy E(d) = 1/2 ||grad d||^2 + integral F(d).
double bulk_energy(const DirectorField& d, const Potential& pot);

// Elastic forcing on the flow, -lambda (grad d)^T (lap d - f(d)), assembled at
// cell centers and averaged to faces.  The pure-gradient parts of the stress
// divergence are absorbed into the modified pressure carried by the flow
// state.  Normal boundary faces get 0 (they are pinned anyway).
VelocityField elastic_force(const DirectorField& d, const Params& params);

// Full stress divergence div(grad d (x) grad d) on faces.  Cross-check oracle
// for elastic_force; second-order in the interior, one-sided tensor extension
// at walls.
VelocityField stress_divergence(const DirectorField& d);

}  // namespace nemflow
