#pragma once

#include <string>
#include <vector>

#include "nemflow/director.hpp"
#include "nemflow/simulator.hpp"

namespace nemflow {

// Solution of -lap d + f(d) = 0 with the run's Dirichlet trace (or Neumann /
// periodic closure), certified by its residual norm.
struct SteadySolution {
    DirectorField d_inf;
    double residual_norm = 0.0;
    int iterations = 0;          // Newton iterations
    std::string method;          // "newton" | "gradient_flow" | "hybrid"
    double energy = 0.0;         // E(d_inf)
};

struct SteadySolveOptions {
    double tol = 1e-10;
    int max_newton = 50;
    int max_flow_steps = 1000;   // gradient-flow fallback budget per round
    int max_rounds = 3;
    LinearSolveConfig lin;       // inner Jacobian solves (cg)
};

// Damped Newton on the stationary problem, Jacobian -lap + f'(d) solved
// matrix-free by CG; when Newton stalls or hits an indefinite direction the
// solver falls back to the semi-implicit gradient flow (v = 0, gamma = 1) and
// retries.  The seed must satisfy the boundary trace.
SteadySolution solve_steady(const DirectorField& seed, const BoundaryData* bd,
                            const Potential& pot, const SteadySolveOptions& opts = {});

// Gap series (t, E(t) - E_inf).  Tiny negatives (quadrature noise) are
// clamped to 0; negatives beyond -1e-12 E(0) are clamped but counted as
// warnings; below -1e-9 E(0) the equilibrium does not belong to this
// trajectory and NumericalError is raised instead.
struct GapSeries {
    std::vector<double> t;
    std::vector<double> gap;
    int clamped = 0;
    int warned = 0;  // clamps beyond the quadrature-noise allowance
};

GapSeries lyapunov_gap(const std::vector<EnergyRecord>& records, double e_inf);

// Decay-law classification by competing least-squares fits on a window:
//   exponential   log y = c - kappa t
//   algebraic     log y = c - beta log(1+t)
// The model with lower RMS wins; implied_theta maps the algebraic exponent
// back through beta = theta/(1-2 theta).
struct RateFit {
    std::string model;        // "exponential" | "algebraic"
    double exponent = 0.0;    // kappa or beta
    double implied_theta = 0.0;
    double fit_rms = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double exp_kappa = 0.0, exp_rms = 0.0;
    double alg_beta = 0.0, alg_rms = 0.0;
};

RateFit fit_decay(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                  double t_hi);

// Lojasiewicz exponent from the differential decay relation: fit the slope s
// of log(-dg/dt) against log g (centered differences), then theta = 1 - s/2
// clamped to (0, 1/2].  Points below 100x the quadrature noise floor or past
// a non-monotone kink are excluded automatically.
struct ThetaEstimate {
    double theta = 0.0;
    double slope = 0.0;
    double rms = 0.0;
    double ci = 0.0;  // ~95% half-width on theta
    double t_lo = 0.0, t_hi = 0.0;
    int points = 0;
};

ThetaEstimate estimate_theta(const GapSeries& gap, double noise_floor = 0.0);

// Largest fit window on which the gap stays above 100x the quadrature noise
// floor; decay fits on a gap series should be windowed this way so the flat
// noise tail does not distort the model competition.
std::pair<double, double> gap_fit_window(const GapSeries& gap, double noise_floor = 0.0);

}  // namespace nemflow
