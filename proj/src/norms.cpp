#include "nemflow/norms.hpp"

#include <algorithm>
#include <cmath>

#include "nemflow/operators.hpp"

namespace nemflow {

namespace {

// Squared face differences of one cell-centered array, SBP link weights.
double grad_sq_cc(const Array2& a, const Grid& g) {
    double sum = 0.0;
    const double ix2 = 1.0 / (g.hx * g.hx), iy2 = 1.0 / (g.hy * g.hy);
    if (g.periodic()) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double dx = a(i, j) - a(i - 1, j);
                sum += dx * dx * ix2;
            }
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double dy = a(i, j) - a(i, j - 1);
                sum += dy * dy * iy2;
            }
    } else {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) {
                const double w = (i == 0 || i == g.nx) ? 0.5 : 1.0;
                const double dx = a(i, j) - a(i - 1, j);
                sum += w * dx * dx * ix2;
            }
        for (int j = 0; j <= g.ny; ++j) {
            const double w = (j == 0 || j == g.ny) ? 0.5 : 1.0;
            for (int i = 0; i < g.nx; ++i) {
                const double dy = a(i, j) - a(i, j - 1);
                sum += w * dy * dy * iy2;
            }
        }
    }
    return sum;
}

double l2_sq_cc(const Array2& a, const Grid& g) {
    double sum = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) sum += a(i, j) * a(i, j);
    return sum * g.hx * g.hy;
}

double linf_cc(const Array2& a, const Grid& g) {
    double m = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) m = std::max(m, std::abs(a(i, j)));
    return m;
}

// MAC face quadrature: on bounded grids the wall-normal end faces carry
// weight 1/2 (they hold exact zeros anyway); periodic grids skip the
// duplicated closing face.
double l2_sq_mac(const VelocityField& w) {
    const Grid& g = w.grid;
    double sum = 0.0;
    if (g.periodic()) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) sum += w.u(i, j) * w.u(i, j);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) sum += w.v(i, j) * w.v(i, j);
    } else {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) {
                const double wt = (i == 0 || i == g.nx) ? 0.5 : 1.0;
                sum += wt * w.u(i, j) * w.u(i, j);
            }
        for (int j = 0; j <= g.ny; ++j) {
            const double wt = (j == 0 || j == g.ny) ? 0.5 : 1.0;
            for (int i = 0; i < g.nx; ++i) sum += wt * w.v(i, j) * w.v(i, j);
        }
    }
    return sum * g.hx * g.hy;
}

// Squared gradient of the u component (x-node, y-cell layout); v is the
// transpose.  x links pair interior faces against the pinned wall faces with
// full weight; y links use the ghost layer with 1/2 boundary weight.
double grad_sq_u(const Array2& u, const Grid& g) {
    double sum = 0.0;
    const double ix2 = 1.0 / (g.hx * g.hx), iy2 = 1.0 / (g.hy * g.hy);
    // nx links per row in both modes: periodic closes through the mirrored
    // face, bounded pairs interior faces against the pinned walls.
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double dx = u(i + 1, j) - u(i, j);
            sum += dx * dx * ix2;
        }
    if (g.periodic()) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double dy = u(i, j) - u(i, j - 1);
                sum += dy * dy * iy2;
            }
    } else {
        for (int j = 0; j <= g.ny; ++j) {
            const double wj = (j == 0 || j == g.ny) ? 0.5 : 1.0;
            for (int i = 0; i <= g.nx; ++i) {
                const double wi = (i == 0 || i == g.nx) ? 0.5 : 1.0;
                const double dy = u(i, j) - u(i, j - 1);
                sum += wi * wj * dy * dy * iy2;
            }
        }
    }
    return sum;
}

double grad_sq_v(const Array2& v, const Grid& g) {
    double sum = 0.0;
    const double ix2 = 1.0 / (g.hx * g.hx), iy2 = 1.0 / (g.hy * g.hy);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double dy = v(i, j + 1) - v(i, j);
            sum += dy * dy * iy2;
        }
    if (g.periodic()) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double dx = v(i, j) - v(i - 1, j);
                sum += dx * dx * ix2;
            }
    } else {
        for (int j = 0; j <= g.ny; ++j) {
            const double wj = (j == 0 || j == g.ny) ? 0.5 : 1.0;
            for (int i = 0; i <= g.nx; ++i) {
                const double wi = (i == 0 || i == g.nx) ? 0.5 : 1.0;
                const double dx = v(i, j) - v(i - 1, j);
                sum += wi * wj * dx * dx * ix2;
            }
        }
    }
    return sum;
}

double linf_u(const Array2& u, const Grid& g) {
    double m = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) m = std::max(m, std::abs(u(i, j)));
    return m;
}

double linf_v(const Array2& v, const Grid& g) {
    double m = 0.0;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) m = std::max(m, std::abs(v(i, j)));
    return m;
}

}  // namespace

double norm(const ScalarField& f, NormKind kind) {
    switch (kind) {
        case NormKind::L2: return std::sqrt(l2_sq_cc(f.a, f.grid));
        case NormKind::H1semi: return std::sqrt(f.grid.hx * f.grid.hy * grad_sq_cc(f.a, f.grid));
        case NormKind::H2semi: return norm(laplacian(f), NormKind::L2);
        case NormKind::Linf: return linf_cc(f.a, f.grid);
    }
    return 0.0;
}

double norm(const DirectorField& d, NormKind kind) {
    const Grid& g = d.grid;
    if (kind == NormKind::Linf) {
        // Pointwise euclidean length of the director, max over cells.
        double m = 0.0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                double s = 0.0;
                for (int c = 0; c < d.m; ++c) s += d.c[c](i, j) * d.c[c](i, j);
                m = std::max(m, s);
            }
        return std::sqrt(m);
    }
    if (kind == NormKind::H2semi) return norm(laplacian(d), NormKind::L2);
    double sum = 0.0;
    for (int c = 0; c < d.m; ++c)
        sum += (kind == NormKind::L2) ? l2_sq_cc(d.c[c], g) : g.hx * g.hy * grad_sq_cc(d.c[c], g);
    return std::sqrt(sum);
}

double norm(const VelocityField& w, NormKind kind) {
    const Grid& g = w.grid;
    switch (kind) {
        case NormKind::L2: return std::sqrt(l2_sq_mac(w));
        case NormKind::H1semi:
            return std::sqrt(g.hx * g.hy * (grad_sq_u(w.u, g) + grad_sq_v(w.v, g)));
        case NormKind::H2semi: return norm(laplacian(w), NormKind::L2);
        case NormKind::Linf: return std::max(linf_u(w.u, g), linf_v(w.v, g));
    }
    return 0.0;
}

double h1_norm(const VelocityField& v) {
    const double a = norm(v, NormKind::L2), b = norm(v, NormKind::H1semi);
    return std::sqrt(a * a + b * b);
}

double h1_norm(const DirectorField& d) {
    const double a = norm(d, NormKind::L2), b = norm(d, NormKind::H1semi);
    return std::sqrt(a * a + b * b);
}

double inner(const ScalarField& a, const ScalarField& b) {
    const Grid& g = a.grid;
    double sum = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) sum += a.a(i, j) * b.a(i, j);
    return sum * g.hx * g.hy;
}

double inner(const VelocityField& a, const VelocityField& b) {
    const Grid& g = a.grid;
    double sum = 0.0;
    if (g.periodic()) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) sum += a.u(i, j) * b.u(i, j);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) sum += a.v(i, j) * b.v(i, j);
    } else {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) {
                const double wt = (i == 0 || i == g.nx) ? 0.5 : 1.0;
                sum += wt * a.u(i, j) * b.u(i, j);
            }
        for (int j = 0; j <= g.ny; ++j) {
            const double wt = (j == 0 || j == g.ny) ? 0.5 : 1.0;
            for (int i = 0; i < g.nx; ++i) sum += wt * a.v(i, j) * b.v(i, j);
        }
    }
    return sum * g.hx * g.hy;
}

double cell_integral(const ScalarField& f) {
    double sum = 0.0;
    for (int j = 0; j < f.grid.ny; ++j)
        for (int i = 0; i < f.grid.nx; ++i) sum += f.a(i, j);
    return sum * f.grid.hx * f.grid.hy;
}

}  // namespace nemflow
