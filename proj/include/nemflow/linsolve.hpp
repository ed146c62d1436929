#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nemflow/fields.hpp"

namespace nemflow {

// Solver selection for the symmetric positive (semi-)definite systems behind
// the implicit substeps.
//
//   "spectral"  tensor-product eigenbasis of the 1D second-difference
//               operators; direct, exact to roundoff, and linear in the right
//               hand side.  Default: the runs stay bit-deterministic and
//               rotation-equivariant at machine precision.
//   "cg"        matrix-free conjugate gradient on the same operators;
//               rel_tol / max_iterations apply.  Kept as the configurable
//               iterative route and as a cross-check of the spectral path.
struct LinearSolveConfig {
    double rel_tol = 1e-10;
    int max_iterations = 0;  // 0: 10 x DOF count
    std::string method = "spectral";

    void validate() const {
        if (!(rel_tol > 0.0) || rel_tol > 1e-4)
            throw ConfigError("linear solve rel_tol must be in (0, 1e-4]");
        if (method != "spectral" && method != "cg")
            throw ConfigError("linear solve method must be 'spectral' or 'cg'");
    }
};

struct SolveStats {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = true;
};

// 1D second-difference eigenbases (unit spacing).  The kinds encode the ghost
// reflection each direction uses:
//   dirichlet_cell   ghost = -interior      (cell-centered, zero trace)
//   neumann_cell     ghost = +interior
//   periodic_cell    wrap
//   dirichlet_node   end values pinned to 0 (face-normal layout)
//   periodic_node    wrap (face-normal layout, duplicate face excluded)
enum class BasisKind { dirichlet_cell, neumann_cell, periodic_cell, dirichlet_node, periodic_node };

struct Basis1D {
    int n = 0;                // DOF count
    std::vector<double> q;    // n*n, q[i*n + k] = eigenvector k at point i, orthonormal
    std::vector<double> lam;  // eigenvalues of the unit-spacing stencil (1,-2,1), <= 0
};

const Basis1D& get_basis(BasisKind kind, int dofs);

// Generic conjugate gradient on flat vectors; apply must be SPD on the DOF
// space.  Returns converged=false (no throw) if a non-positive curvature
// direction is hit, so callers can fall back.
SolveStats cg_solve(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                    const std::vector<double>& b, std::vector<double>& x, double rel_tol,
                    int max_iterations);

// (a I - b lap) x = rhs on a cell-centered array with per-direction kinds
// implied by bc mode (dirichlet -> zero-trace reflection; inhomogeneous data
// must be folded into rhs with add_dirichlet_lift beforehand).
Array2 solve_helmholtz_cc(const Array2& rhs, double a, double b, const Grid& g,
                          const LinearSolveConfig& cfg, SolveStats* stats = nullptr);

// rhs += b * (2/h^2) g along Dirichlet walls, for one director component.
void add_dirichlet_lift(Array2& rhs, const BoundaryData& bd, int comp, double b, const Grid& g);

// Same solve on the staggered u / v layouts (wall-normal faces pinned to 0).
Array2 solve_helmholtz_u(const Array2& rhs, double a, double b, const Grid& g,
                         const LinearSolveConfig& cfg, SolveStats* stats = nullptr);
Array2 solve_helmholtz_v(const Array2& rhs, double a, double b, const Grid& g,
                         const LinearSolveConfig& cfg, SolveStats* stats = nullptr);

// lap phi = rhs with Neumann walls (bounded modes) or periodic wrap, zero-mean
// gauge.  Throws NumericalError when mean(rhs) exceeds compat_tol * scale,
// which signals a boundary-condition bug upstream.
ScalarField solve_poisson(const ScalarField& rhs, const LinearSolveConfig& cfg,
                          SolveStats* stats = nullptr, double compat_tol = 1e-8);

}  // namespace nemflow
