#include "nemflow/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "nemflow/bc.hpp"
#include "nemflow/norms.hpp"
#include "nemflow/operators.hpp"

namespace nemflow {

namespace {

double residual_norm_of(const DirectorField& d, const Potential& pot) {
    return director_residual(d, pot).second;
}

// Newton direction: solve (-lap + f'(d)) delta = -r matrix-free with CG over
// the stacked components.  The correction has zero boundary trace, so the
// Laplacian uses the zero-trace reflection.  Returns false on indefiniteness.
bool newton_direction(const DirectorField& d, const DirectorField& r, const Potential& pot,
                      const LinearSolveConfig& lin, DirectorField& delta) {
    const Grid& g = d.grid;
    const int m = d.m;
    const size_t cells = static_cast<size_t>(g.nx) * g.ny;

    // Per-cell Jacobian blocks of f.
    std::vector<double> jac(cells * m * m);
    {
        double dv[3], jv[9];
        size_t idx = 0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i, ++idx) {
                for (int c = 0; c < m; ++c) dv[c] = d.c[c](i, j);
                pot.jac(dv, m, jv);
                for (int a = 0; a < m * m; ++a) jac[idx * m * m + a] = jv[a];
            }
    }

    std::vector<Array2> work(m, Array2(g.nx, g.ny));
    const double ihx2 = 1.0 / (g.hx * g.hx), ihy2 = 1.0 / (g.hy * g.hy);
    auto fill_zero_trace = [&](Array2& a) {
        const int nx = g.nx, ny = g.ny;
        switch (g.bc_mode) {
            case BcMode::dirichlet:
                for (int j = 0; j < ny; ++j) {
                    a(-1, j) = -a(0, j);
                    a(nx, j) = -a(nx - 1, j);
                }
                for (int i = 0; i < nx; ++i) {
                    a(i, -1) = -a(i, 0);
                    a(i, ny) = -a(i, ny - 1);
                }
                break;
            case BcMode::free_slip:
                for (int j = 0; j < ny; ++j) {
                    a(-1, j) = a(0, j);
                    a(nx, j) = a(nx - 1, j);
                }
                for (int i = 0; i < nx; ++i) {
                    a(i, -1) = a(i, 0);
                    a(i, ny) = a(i, ny - 1);
                }
                break;
            case BcMode::periodic:
                for (int j = 0; j < ny; ++j) {
                    a(-1, j) = a(nx - 1, j);
                    a(nx, j) = a(0, j);
                }
                for (int i = 0; i < nx; ++i) {
                    a(i, -1) = a(i, ny - 1);
                    a(i, ny) = a(i, 0);
                }
                break;
        }
    };

    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int c = 0; c < m; ++c) {
            size_t idx = 0;
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i, ++idx) work[c](i, j) = in[c * cells + idx];
            fill_zero_trace(work[c]);
        }
        size_t idx = 0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i, ++idx) {
                for (int c = 0; c < m; ++c) {
                    const Array2& a = work[c];
                    const double lap = (a(i + 1, j) - 2.0 * a(i, j) + a(i - 1, j)) * ihx2 +
                                       (a(i, j + 1) - 2.0 * a(i, j) + a(i, j - 1)) * ihy2;
                    double jd = 0.0;
                    for (int b = 0; b < m; ++b) jd += jac[idx * m * m + c * m + b] * work[b](i, j);
                    out[c * cells + idx] = -lap + jd;
                }
            }
    };

    std::vector<double> rhs(cells * m);
    for (int c = 0; c < m; ++c) {
        size_t idx = 0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i, ++idx) rhs[c * cells + idx] = -r.c[c](i, j);
    }
    std::vector<double> x;
    LinearSolveConfig cfg = lin;
    cfg.method = "cg";  // space-varying blocks: not separable
    SolveStats st = cg_solve(apply, rhs, x, cfg.rel_tol, cfg.max_iterations);
    if (!st.converged) return false;

    delta = DirectorField(g, m);
    for (int c = 0; c < m; ++c) {
        size_t idx = 0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i, ++idx) delta.c[c](i, j) = x[c * cells + idx];
    }
    return true;
}

DirectorField add_scaled(const DirectorField& d, const DirectorField& delta, double s,
                         const BoundaryData* bd) {
    DirectorField out = d;
    const Grid& g = d.grid;
    for (int c = 0; c < d.m; ++c)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) out.c[c](i, j) += s * delta.c[c](i, j);
    apply_bc(out, g.bc_mode == BcMode::dirichlet ? bd : nullptr);
    return out;
}

// Least squares y = a + b x; returns [a, b] and rms of residuals.
struct LsqFit {
    double a = 0.0, b = 0.0, rms = 0.0, se_b = 0.0;
};

LsqFit lsq(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    LsqFit f;
    if (std::abs(det) < 1e-300) return f;
    f.b = (n * sxy - sx * sy) / det;
    f.a = (sy - f.b * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.a + f.b * x[i]);
        ss += e * e;
    }
    f.rms = std::sqrt(ss / n);
    if (n > 2) {
        const double sigma2 = ss / (n - 2);
        f.se_b = std::sqrt(sigma2 * n / det);
    }
    return f;
}

}  // namespace

SteadySolution solve_steady(const DirectorField& seed, const BoundaryData* bd,
                            const Potential& pot, const SteadySolveOptions& opts) {
    const Grid& g = seed.grid;
    Params flow_params;  // gradient-flow fallback runs with gamma = 1
    flow_params.potential = pot;

    DirectorField d = seed;
    apply_bc(d, g.bc_mode == BcMode::dirichlet ? bd : nullptr);

    SteadySolution sol;
    sol.method = "newton";
    double rn = residual_norm_of(d, pot);
    bool used_flow = false;

    for (int round = 0; round <= opts.max_rounds; ++round) {
        // Newton with halving line search; an indefinite direction or a
        // failed search drops this round into the gradient-flow fallback.
        int newton_iters = 0;
        while (rn > opts.tol && newton_iters < opts.max_newton) {
            auto res = director_residual(d, pot);
            DirectorField delta;
            if (!newton_direction(d, res.first, pot, opts.lin, delta)) break;
            double s = 1.0;
            bool accepted = false;
            while (s >= 1e-4) {
                DirectorField trial = add_scaled(d, delta, s, bd);
                const double rn_trial = residual_norm_of(trial, pot);
                if (std::isfinite(rn_trial) && rn_trial < rn * (1.0 - 1e-4 * s)) {
                    d = std::move(trial);
                    rn = rn_trial;
                    accepted = true;
                    break;
                }
                s *= 0.5;
            }
            ++newton_iters;
            ++sol.iterations;
            if (!accepted) break;
        }
        if (rn <= opts.tol) break;
        if (round == opts.max_rounds) break;

        // Gradient-flow fallback: d_tau = lap d - f(d), semi-implicit steps.
        used_flow = true;
        const double dtau = 0.5 / pot.stiffness_bound();
        VelocityField vzero(g);
        DirectorStepConfig dcfg;
        dcfg.lin = opts.lin;
        dcfg.lin.method = "spectral";
        for (int k = 0; k < opts.max_flow_steps; ++k) {
            d = director_step(d, vzero, dtau, flow_params,
                              g.bc_mode == BcMode::dirichlet ? bd : nullptr, dcfg);
            if ((k + 1) % 50 == 0 && residual_norm_of(d, pot) <= opts.tol) break;
        }
        rn = residual_norm_of(d, pot);
    }

    if (!std::isfinite(rn)) throw NumericalError("solve_steady: non-finite residual");
    if (rn > opts.tol)
        throw NumericalError("solve_steady: no convergence, best residual " + std::to_string(rn));
    sol.d_inf = std::move(d);
    sol.residual_norm = rn;
    if (used_flow) sol.method = sol.iterations > 0 ? "hybrid" : "gradient_flow";
    sol.energy = bulk_energy(sol.d_inf, pot);
    return sol;
}

GapSeries lyapunov_gap(const std::vector<EnergyRecord>& records, double e_inf) {
    if (records.empty()) throw ConfigError("lyapunov_gap: empty record list");
    const double scale = std::max(std::abs(records.front().total), 1.0);
    GapSeries out;
    for (const auto& r : records) {
        double gap = r.total - e_inf;
        if (gap < -1e-9 * scale)
            throw NumericalError("lyapunov_gap: gap " + std::to_string(gap) +
                                 " below tolerance: wrong equilibrium for this trajectory");
        if (gap < 0.0) {
            if (gap < -1e-12 * scale) ++out.warned;
            gap = 0.0;
            ++out.clamped;
        }
        out.t.push_back(r.t);
        out.gap.push_back(gap);
    }
    return out;
}

RateFit fit_decay(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                  double t_hi) {
    if (t.size() != y.size()) throw ConfigError("fit_decay: length mismatch");
    std::vector<double> tw, lw, aw;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(y[i] > 0.0)) continue;
        tw.push_back(t[i]);
        lw.push_back(std::log(y[i]));
        aw.push_back(std::log1p(t[i]));
    }
    if (tw.size() < 20)
        throw ConfigError("fit_decay: insufficient points in window (" + std::to_string(tw.size()) +
                          " positive, need >= 20)");
    const double spread = *std::max_element(lw.begin(), lw.end()) -
                          *std::min_element(lw.begin(), lw.end());
    if (spread < 1e-12) throw ConfigError("fit_decay: degenerate (constant) series");

    const LsqFit fe = lsq(tw, lw);  // log y = a - kappa t
    const LsqFit fa = lsq(aw, lw);  // log y = a - beta log(1+t)

    RateFit out;
    out.t_lo = tw.front();
    out.t_hi = tw.back();
    out.exp_kappa = -fe.b;
    out.exp_rms = fe.rms;
    out.alg_beta = -fa.b;
    out.alg_rms = fa.rms;
    if (fe.rms <= fa.rms) {
        out.model = "exponential";
        out.exponent = out.exp_kappa;
        out.implied_theta = 0.5;
        out.fit_rms = fe.rms;
    } else {
        out.model = "algebraic";
        out.exponent = out.alg_beta;
        out.fit_rms = fa.rms;
        if (!(out.alg_beta > 0.0)) throw ConfigError("fit_decay: non-decaying algebraic fit");
        out.implied_theta = out.alg_beta / (1.0 + 2.0 * out.alg_beta);
    }
    return out;
}

namespace {

double default_noise_floor(const GapSeries& gap) {
    // Quadrature noise scale of the gap values: double precision on the
    // initial energy magnitude.
    return 1e-13 * std::max(std::abs(gap.gap.front()), 1e-30);
}

}  // namespace

std::pair<double, double> gap_fit_window(const GapSeries& gap, double noise_floor) {
    if (gap.t.empty()) throw ConfigError("gap_fit_window: empty series");
    if (noise_floor <= 0.0) noise_floor = default_noise_floor(gap);
    const double cutoff = 100.0 * noise_floor;
    double lo = gap.t.front(), hi = gap.t.front();
    for (size_t i = 0; i < gap.t.size(); ++i)
        if (gap.gap[i] > cutoff) hi = gap.t[i];
    return {lo, hi};
}

ThetaEstimate estimate_theta(const GapSeries& gap, double noise_floor) {
    const size_t n = gap.t.size();
    if (n < 3) throw ConfigError("estimate_theta: need at least 3 points");
    if (noise_floor <= 0.0) noise_floor = default_noise_floor(gap);
    const double cutoff = 100.0 * noise_floor;

    std::vector<double> lg, ldg;
    double t_lo = 0.0, t_hi = 0.0;
    for (size_t i = 1; i + 1 < n; ++i) {
        const double g = gap.gap[i];
        if (!(g > cutoff)) continue;
        const double dgdt = (gap.gap[i + 1] - gap.gap[i - 1]) / (gap.t[i + 1] - gap.t[i - 1]);
        if (!(-dgdt > 0.0)) continue;  // non-decreasing stretch: skip
        if (lg.empty()) t_lo = gap.t[i];
        t_hi = gap.t[i];
        lg.push_back(std::log(g));
        ldg.push_back(std::log(-dgdt));
    }
    if (lg.size() < 5)
        throw ConfigError("estimate_theta: too few strictly decreasing points above noise floor");

    const LsqFit f = lsq(lg, ldg);
    ThetaEstimate est;
    est.slope = f.b;
    est.rms = f.rms;
    est.theta = 1.0 - 0.5 * f.b;
    est.theta = std::min(0.5, std::max(1e-6, est.theta));
    est.ci = 0.5 * 1.96 * f.se_b;
    est.t_lo = t_lo;
    est.t_hi = t_hi;
    est.points = static_cast<int>(lg.size());
    return est;
}

}  // namespace nemflow
