#include "nemflow/material.hpp"

#include "nemflow/bc.hpp"
#include "nemflow/norms.hpp"
#include "nemflow/operators.hpp"

namespace nemflow {

DirectorField potential_gradient(const DirectorField& d, const Potential& pot) {
    const Grid& g = d.grid;
    DirectorField out(g, d.m);
    double dv[3], fv[3];
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            for (int c = 0; c < d.m; ++c) dv[c] = d.c[c](i, j);
            pot.f(dv, d.m, fv);
            for (int c = 0; c < d.m; ++c) out.c[c](i, j) = fv[c];
        }
    return out;
}

double bulk_energy(const DirectorField& d, const Potential& pot) {
    const Grid& g = d.grid;
    const double grad_sq = norm(d, NormKind::H1semi);
    double fsum = 0.0;
    double dv[3];
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            for (int c = 0; c < d.m; ++c) dv[c] = d.c[c](i, j);
            fsum += pot.F(dv, d.m);
        }
    return 0.5 * grad_sq * grad_sq + fsum * g.hx * g.hy;
}

namespace {

// (grad d)^T r at cell centers: out_x = sum_c dx(d_c) r_c, same for y.
void grad_dot(const DirectorField& d, const DirectorField& r, Array2& cx, Array2& cy) {
    const Grid& g = d.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double sx = 0.0, sy = 0.0;
            for (int c = 0; c < d.m; ++c) {
                const Array2& a = d.c[c];
                sx += (a(i + 1, j) - a(i - 1, j)) / (2.0 * g.hx) * r.c[c](i, j);
                sy += (a(i, j + 1) - a(i, j - 1)) / (2.0 * g.hy) * r.c[c](i, j);
            }
            cx(i, j) = sx;
            cy(i, j) = sy;
        }
}

// Average a cell-centered vector (cx, cy) to interior faces.  This 2-point
// average is the exact adjoint of the face-to-cell velocity average, which
// is what lets the forcing work cancel the transport term in the audit.
VelocityField cells_to_faces(const Array2& cx, const Array2& cy, const Grid& g, double scale) {
    VelocityField out(g);
    const bool per = g.periodic();
    Array2 cxg = cx, cyg = cy;
    if (per) {
        ScalarField tmp(g);
        tmp.a = cxg;
        apply_bc(tmp);
        cxg = tmp.a;
        tmp.a = cyg;
        apply_bc(tmp);
        cyg = tmp.a;
    }
    const int i0 = per ? 0 : 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = i0; i <= g.nx - 1; ++i)
            out.u(i, j) = scale * 0.5 * (cxg(i - 1, j) + cxg(i, j));
    const int j0 = per ? 0 : 1;
    for (int j = j0; j <= g.ny - 1; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.v(i, j) = scale * 0.5 * (cyg(i, j - 1) + cyg(i, j));
    if (per) {
        for (int j = 0; j < g.ny; ++j) out.u(g.nx, j) = out.u(0, j);
        for (int i = 0; i < g.nx; ++i) out.v(i, g.ny) = out.v(i, 0);
    }
    return out;
}

}  // namespace

VelocityField elastic_force(const DirectorField& d, const Params& params) {
    const Grid& g = d.grid;
    // r = lap d - f(d)
    DirectorField r = laplacian(d);
    DirectorField fd = potential_gradient(d, params.potential);
    for (int c = 0; c < d.m; ++c)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) r.c[c](i, j) -= fd.c[c](i, j);
    Array2 cx(g.nx, g.ny), cy(g.nx, g.ny);
    grad_dot(d, r, cx, cy);
    return cells_to_faces(cx, cy, g, -params.lambda);
}

VelocityField stress_divergence(const DirectorField& d) {
    const Grid& g = d.grid;
    // Tensor entries at cell centers from centered differences.
    ScalarField t11(g), t12(g), t22(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double s11 = 0.0, s12 = 0.0, s22 = 0.0;
            for (int c = 0; c < d.m; ++c) {
                const Array2& a = d.c[c];
                const double dx = (a(i + 1, j) - a(i - 1, j)) / (2.0 * g.hx);
                const double dy = (a(i, j + 1) - a(i, j - 1)) / (2.0 * g.hy);
                s11 += dx * dx;
                s12 += dx * dy;
                s22 += dy * dy;
            }
            t11.a(i, j) = s11;
            t12.a(i, j) = s12;
            t22.a(i, j) = s22;
        }
    apply_bc(t11);  // periodic wrap or one-sided extension on walls
    apply_bc(t12);
    apply_bc(t22);

    VelocityField out(g);
    const bool per = g.periodic();
    const int i0 = per ? 0 : 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = i0; i <= g.nx - 1; ++i) {
            const double d11 = (t11.a(i, j) - t11.a(i - 1, j)) / g.hx;
            const double t12m = 0.5 * (t12.a(i - 1, j - 1) + t12.a(i, j - 1));
            const double t12p = 0.5 * (t12.a(i - 1, j + 1) + t12.a(i, j + 1));
            out.u(i, j) = d11 + (t12p - t12m) / (2.0 * g.hy);
        }
    const int j0 = per ? 0 : 1;
    for (int j = j0; j <= g.ny - 1; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d22 = (t22.a(i, j) - t22.a(i, j - 1)) / g.hy;
            const double t12m = 0.5 * (t12.a(i - 1, j - 1) + t12.a(i - 1, j));
            const double t12p = 0.5 * (t12.a(i + 1, j - 1) + t12.a(i + 1, j));
            out.v(i, j) = d22 + (t12p - t12m) / (2.0 * g.hx);
        }
    if (per) {
        for (int j = 0; j < g.ny; ++j) out.u(g.nx, j) = out.u(0, j);
        for (int i = 0; i < g.nx; ++i) out.v(i, g.ny) = out.v(i, 0);
    }
    return out;
}

}  // namespace nemflow
