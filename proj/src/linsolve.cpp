#include "nemflow/linsolve.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "nemflow/errors.hpp"

namespace nemflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

Basis1D build_basis(BasisKind kind, int dofs) {
    Basis1D b;
    b.n = dofs;
    b.q.assign(static_cast<size_t>(dofs) * dofs, 0.0);
    b.lam.assign(dofs, 0.0);
    auto col = [&](int k) { return b.q.data() + k; };  // stride dofs over i
    auto set = [&](int i, int k, double v) { b.q[static_cast<size_t>(i) * dofs + k] = v; };

    switch (kind) {
        case BasisKind::dirichlet_cell:
            for (int k = 0; k < dofs; ++k) {
                const double th = kPi * (k + 1) / dofs;
                for (int i = 0; i < dofs; ++i) set(i, k, std::sin(th * (i + 0.5)));
                b.lam[k] = 2.0 * std::cos(th) - 2.0;
            }
            break;
        case BasisKind::neumann_cell:
            for (int k = 0; k < dofs; ++k) {
                const double th = kPi * k / dofs;
                for (int i = 0; i < dofs; ++i) set(i, k, k == 0 ? 1.0 : std::cos(th * (i + 0.5)));
                b.lam[k] = 2.0 * std::cos(th) - 2.0;
            }
            break;
        case BasisKind::dirichlet_node:
            // DOFs are interior nodes 1..n-1 of an n-interval line.
            for (int k = 0; k < dofs; ++k) {
                const double th = kPi * (k + 1) / (dofs + 1);
                for (int i = 0; i < dofs; ++i) set(i, k, std::sin(th * (i + 1)));
                b.lam[k] = 2.0 * std::cos(th) - 2.0;
            }
            break;
        case BasisKind::periodic_cell:
        case BasisKind::periodic_node: {
            const double shift = (kind == BasisKind::periodic_cell) ? 0.5 : 0.0;
            int k = 0;
            for (int i = 0; i < dofs; ++i) set(i, k, 1.0);
            b.lam[k++] = 0.0;
            for (int f = 1; 2 * f < dofs; ++f) {
                const double th = 2.0 * kPi * f / dofs;
                for (int i = 0; i < dofs; ++i) set(i, k, std::cos(th * (i + shift)));
                b.lam[k++] = 2.0 * std::cos(th) - 2.0;
                for (int i = 0; i < dofs; ++i) set(i, k, std::sin(th * (i + shift)));
                b.lam[k++] = 2.0 * std::cos(th) - 2.0;
            }
            if (dofs % 2 == 0) {
                // Nyquist mode; on cell-centered sampling the cosine branch
                // vanishes identically, the sine branch survives (and vice
                // versa on nodes).
                for (int i = 0; i < dofs; ++i) {
                    const double t = kPi * (i + shift);
                    set(i, k, kind == BasisKind::periodic_cell ? std::sin(t) : std::cos(t));
                }
                b.lam[k++] = -4.0;
            }
            break;
        }
    }

    // Columns are exactly orthogonal; normalize numerically.
    for (int k = 0; k < dofs; ++k) {
        double s = 0.0;
        double* c = col(k);
        for (int i = 0; i < dofs; ++i) s += c[static_cast<size_t>(i) * dofs] * c[static_cast<size_t>(i) * dofs];
        const double inv = 1.0 / std::sqrt(s);
        for (int i = 0; i < dofs; ++i) c[static_cast<size_t>(i) * dofs] *= inv;
    }
    return b;
}

std::mutex g_basis_mutex;
std::map<std::pair<int, int>, Basis1D> g_basis_cache;

}  // namespace

const Basis1D& get_basis(BasisKind kind, int dofs) {
    std::lock_guard<std::mutex> lock(g_basis_mutex);
    auto key = std::make_pair(static_cast<int>(kind), dofs);
    auto it = g_basis_cache.find(key);
    if (it == g_basis_cache.end()) it = g_basis_cache.emplace(key, build_basis(kind, dofs)).first;
    return it->second;
}

SolveStats cg_solve(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                    const std::vector<double>& b, std::vector<double>& x, double rel_tol,
                    int max_iterations) {
    const size_t n = b.size();
    x.assign(n, 0.0);
    SolveStats st;
    auto dot = [](const std::vector<double>& a, const std::vector<double>& c) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * c[i];
        return s;
    };
    const double bnorm = std::sqrt(dot(b, b));
    if (bnorm == 0.0) return st;
    if (max_iterations <= 0) max_iterations = static_cast<int>(10 * n) + 100;

    std::vector<double> r = b, p = b, ap(n);
    double rr = dot(r, r);
    const double tol2 = rel_tol * rel_tol * bnorm * bnorm;
    for (int it = 0; it < max_iterations; ++it) {
        if (rr <= tol2) break;
        apply(p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) {
            st.converged = false;  // indefinite or breakdown
            st.rel_residual = std::sqrt(rr) / bnorm;
            st.iterations = it;
            return st;
        }
        const double alpha = rr / pap;
        for (size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];
        const double rr_new = dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        st.iterations = it + 1;
    }
    st.rel_residual = std::sqrt(rr) / bnorm;
    st.converged = rr <= tol2;
    return st;
}

namespace {

struct BlockSpec {
    // DOF block inside an Array2: indices i in [i0, i0+n1), j in [j0, j0+n2).
    int i0 = 0, j0 = 0, n1 = 0, n2 = 0;
    BasisKind kx{}, ky{};
};

BasisKind cc_kind(BcMode mode, bool zero_trace) {
    switch (mode) {
        case BcMode::dirichlet: return zero_trace ? BasisKind::dirichlet_cell : BasisKind::neumann_cell;
        case BcMode::free_slip: return BasisKind::neumann_cell;
        case BcMode::periodic: return BasisKind::periodic_cell;
    }
    return BasisKind::neumann_cell;
}

// ---- spectral path -------------------------------------------------------

// Solve (a I - b lap) on the block.  Singular modes (denominator ~ 0) are
// gauged to zero; the Poisson wrapper checks compatibility beforehand.
void spectral_block_solve(Array2& x, const Array2& rhs, double a, double b, double hx, double hy,
                          const BlockSpec& s) {
    const Basis1D& bx = get_basis(s.kx, s.n1);
    const Basis1D& by = get_basis(s.ky, s.n2);
    const int n1 = s.n1, n2 = s.n2;
    std::vector<double> t1(static_cast<size_t>(n1) * n2), t2(static_cast<size_t>(n1) * n2);

    // t1[k][j] = sum_i q[i][k] rhs[i][j]
    for (int k = 0; k < n1; ++k)
        for (int j = 0; j < n2; ++j) t1[static_cast<size_t>(k) * n2 + j] = 0.0;
    for (int i = 0; i < n1; ++i)
        for (int k = 0; k < n1; ++k) {
            const double q = bx.q[static_cast<size_t>(i) * n1 + k];
            for (int j = 0; j < n2; ++j)
                t1[static_cast<size_t>(k) * n2 + j] += q * rhs(s.i0 + i, s.j0 + j);
        }
    // t2[k][l] = sum_j t1[k][j] q[j][l], then scale by the eigenvalue.
    const double ihx2 = 1.0 / (hx * hx), ihy2 = 1.0 / (hy * hy);
    for (int k = 0; k < n1; ++k) {
        for (int l = 0; l < n2; ++l) {
            double sum = 0.0;
            for (int j = 0; j < n2; ++j)
                sum += t1[static_cast<size_t>(k) * n2 + j] * by.q[static_cast<size_t>(j) * n2 + l];
            const double denom = a - b * (bx.lam[k] * ihx2 + by.lam[l] * ihy2);
            t2[static_cast<size_t>(k) * n2 + l] = (std::abs(denom) < 1e-300) ? 0.0 : sum / denom;
        }
    }
    // t1[k][j] = sum_l t2[k][l] q[j][l]
    for (int k = 0; k < n1; ++k)
        for (int j = 0; j < n2; ++j) {
            double sum = 0.0;
            for (int l = 0; l < n2; ++l)
                sum += t2[static_cast<size_t>(k) * n2 + l] * by.q[static_cast<size_t>(j) * n2 + l];
            t1[static_cast<size_t>(k) * n2 + j] = sum;
        }
    // x[i][j] = sum_k q[i][k] t1[k][j]
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            double sum = 0.0;
            for (int k = 0; k < n1; ++k)
                sum += bx.q[static_cast<size_t>(i) * n1 + k] * t1[static_cast<size_t>(k) * n2 + j];
            x(s.i0 + i, s.j0 + j) = sum;
        }
}

// ---- matrix-free operator for the CG path --------------------------------

void fill_ghosts_1d(Array2& w, const BlockSpec& s) {
    // x direction
    const int ia = s.i0, ib = s.i0 + s.n1 - 1;
    for (int j = s.j0; j < s.j0 + s.n2; ++j) {
        switch (s.kx) {
            case BasisKind::dirichlet_cell:
                w(ia - 1, j) = -w(ia, j);
                w(ib + 1, j) = -w(ib, j);
                break;
            case BasisKind::neumann_cell:
                w(ia - 1, j) = w(ia, j);
                w(ib + 1, j) = w(ib, j);
                break;
            case BasisKind::periodic_cell:
            case BasisKind::periodic_node:
                w(ia - 1, j) = w(ib, j);
                w(ib + 1, j) = w(ia, j);
                break;
            case BasisKind::dirichlet_node:
                w(ia - 1, j) = 0.0;
                w(ib + 1, j) = 0.0;
                break;
        }
    }
    const int ja = s.j0, jb = s.j0 + s.n2 - 1;
    for (int i = s.i0; i < s.i0 + s.n1; ++i) {
        switch (s.ky) {
            case BasisKind::dirichlet_cell:
                w(i, ja - 1) = -w(i, ja);
                w(i, jb + 1) = -w(i, jb);
                break;
            case BasisKind::neumann_cell:
                w(i, ja - 1) = w(i, ja);
                w(i, jb + 1) = w(i, jb);
                break;
            case BasisKind::periodic_cell:
            case BasisKind::periodic_node:
                w(i, ja - 1) = w(i, jb);
                w(i, jb + 1) = w(i, ja);
                break;
            case BasisKind::dirichlet_node:
                w(i, ja - 1) = 0.0;
                w(i, jb + 1) = 0.0;
                break;
        }
    }
}

SolveStats cg_block_solve(Array2& x, const Array2& rhs, double a, double b, double hx, double hy,
                          const BlockSpec& s, const LinearSolveConfig& cfg, bool deflate_mean) {
    const int n1 = s.n1, n2 = s.n2;
    const size_t ndof = static_cast<size_t>(n1) * n2;
    std::vector<double> bb(ndof);
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i) bb[static_cast<size_t>(j) * n1 + i] = rhs(s.i0 + i, s.j0 + j);
    if (deflate_mean) {
        double mean = 0.0;
        for (double v : bb) mean += v;
        mean /= static_cast<double>(ndof);
        for (double& v : bb) v -= mean;
    }
    Array2 w(x.nx(), x.ny());
    const double ihx2 = 1.0 / (hx * hx), ihy2 = 1.0 / (hy * hy);
    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int j = 0; j < n2; ++j)
            for (int i = 0; i < n1; ++i) w(s.i0 + i, s.j0 + j) = in[static_cast<size_t>(j) * n1 + i];
        fill_ghosts_1d(w, s);
        for (int j = 0; j < n2; ++j)
            for (int i = 0; i < n1; ++i) {
                const int I = s.i0 + i, J = s.j0 + j;
                const double lap = (w(I + 1, J) - 2.0 * w(I, J) + w(I - 1, J)) * ihx2 +
                                   (w(I, J + 1) - 2.0 * w(I, J) + w(I, J - 1)) * ihy2;
                out[static_cast<size_t>(j) * n1 + i] = a * w(I, J) - b * lap;
            }
    };
    std::vector<double> xx;
    SolveStats st = cg_solve(apply, bb, xx, cfg.rel_tol, cfg.max_iterations);
    if (!st.converged)
        throw NumericalError("cg: no convergence, rel_residual=" + std::to_string(st.rel_residual) +
                             " after " + std::to_string(st.iterations) + " iterations");
    if (deflate_mean) {
        double mean = 0.0;
        for (double v : xx) mean += v;
        mean /= static_cast<double>(ndof);
        for (double& v : xx) v -= mean;
    }
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i) x(s.i0 + i, s.j0 + j) = xx[static_cast<size_t>(j) * n1 + i];
    return st;
}

Array2 block_dispatch(const Array2& rhs, double a, double b, double hx, double hy,
                      const BlockSpec& s, const LinearSolveConfig& cfg, SolveStats* stats,
                      bool deflate_mean) {
    Array2 x(rhs.nx(), rhs.ny());
    if (cfg.method == "cg") {
        SolveStats st = cg_block_solve(x, rhs, a, b, hx, hy, s, cfg, deflate_mean);
        if (stats) *stats = st;
        return x;
    }
    spectral_block_solve(x, rhs, a, b, hx, hy, s);
    if (stats) *stats = SolveStats{};
    return x;
}

}  // namespace

Array2 solve_helmholtz_cc(const Array2& rhs, double a, double b, const Grid& g,
                          const LinearSolveConfig& cfg, SolveStats* stats) {
    BlockSpec s;
    s.i0 = 0;
    s.j0 = 0;
    s.n1 = g.nx;
    s.n2 = g.ny;
    s.kx = cc_kind(g.bc_mode, /*zero_trace=*/true);
    s.ky = s.kx;
    return block_dispatch(rhs, a, b, g.hx, g.hy, s, cfg, stats, false);
}

void add_dirichlet_lift(Array2& rhs, const BoundaryData& bd, int comp, double b, const Grid& g) {
    const double cx = 2.0 * b / (g.hx * g.hx), cy = 2.0 * b / (g.hy * g.hy);
    for (int j = 0; j < g.ny; ++j) {
        rhs(0, j) += cx * bd.at_left(j, comp);
        rhs(g.nx - 1, j) += cx * bd.at_right(j, comp);
    }
    for (int i = 0; i < g.nx; ++i) {
        rhs(i, 0) += cy * bd.at_bottom(i, comp);
        rhs(i, g.ny - 1) += cy * bd.at_top(i, comp);
    }
}

Array2 solve_helmholtz_u(const Array2& rhs, double a, double b, const Grid& g,
                         const LinearSolveConfig& cfg, SolveStats* stats) {
    BlockSpec s;
    if (g.periodic()) {
        s.i0 = 0;
        s.n1 = g.nx;
        s.kx = BasisKind::periodic_node;
        s.ky = BasisKind::periodic_cell;
    } else {
        s.i0 = 1;
        s.n1 = g.nx - 1;
        s.kx = BasisKind::dirichlet_node;
        s.ky = cc_kind(g.bc_mode, true);  // tangential reflection
    }
    s.j0 = 0;
    s.n2 = g.ny;
    Array2 x = block_dispatch(rhs, a, b, g.hx, g.hy, s, cfg, stats, false);
    if (g.periodic())
        for (int j = 0; j < g.ny; ++j) x(g.nx, j) = x(0, j);
    return x;
}

Array2 solve_helmholtz_v(const Array2& rhs, double a, double b, const Grid& g,
                         const LinearSolveConfig& cfg, SolveStats* stats) {
    BlockSpec s;
    if (g.periodic()) {
        s.j0 = 0;
        s.n2 = g.ny;
        s.ky = BasisKind::periodic_node;
        s.kx = BasisKind::periodic_cell;
    } else {
        s.j0 = 1;
        s.n2 = g.ny - 1;
        s.ky = BasisKind::dirichlet_node;
        s.kx = cc_kind(g.bc_mode, true);
    }
    s.i0 = 0;
    s.n1 = g.nx;
    Array2 x = block_dispatch(rhs, a, b, g.hx, g.hy, s, cfg, stats, false);
    if (g.periodic())
        for (int i = 0; i < g.nx; ++i) x(i, g.ny) = x(i, 0);
    return x;
}

ScalarField solve_poisson(const ScalarField& rhs, const LinearSolveConfig& cfg, SolveStats* stats,
                          double compat_tol) {
    const Grid& g = rhs.grid;
    // Compatibility: the discrete divergence of a wall-respecting field sums
    // to zero exactly, so a large mean is always an upstream BC bug.
    double mean = 0.0, scale = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            mean += rhs.a(i, j);
            scale = std::max(scale, std::abs(rhs.a(i, j)));
        }
    mean /= static_cast<double>(g.nx) * g.ny;
    if (std::abs(mean) > compat_tol * (1.0 + scale))
        throw NumericalError("poisson: incompatible right-hand side, mean=" + std::to_string(mean));

    ScalarField centered(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) centered.a(i, j) = rhs.a(i, j) - mean;

    BlockSpec s;
    s.i0 = 0;
    s.j0 = 0;
    s.n1 = g.nx;
    s.n2 = g.ny;
    s.kx = g.periodic() ? BasisKind::periodic_cell : BasisKind::neumann_cell;
    s.ky = s.kx;

    ScalarField phi(g);
    // lap phi = rhs  <=>  (0 I - (-1) lap) phi = rhs; CG needs the SPD form.
    if (cfg.method == "cg") {
        ScalarField neg(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) neg.a(i, j) = -centered.a(i, j);
        SolveStats st = cg_block_solve(phi.a, neg.a, 0.0, 1.0, g.hx, g.hy, s, cfg, true);
        if (stats) *stats = st;
    } else {
        phi.a = block_dispatch(centered.a, 0.0, -1.0, g.hx, g.hy, s, cfg, stats, false);
    }
    // Zero-mean gauge.
    double pmean = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) pmean += phi.a(i, j);
    pmean /= static_cast<double>(g.nx) * g.ny;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) phi.a(i, j) -= pmean;
    return phi;
}

}  // namespace nemflow
