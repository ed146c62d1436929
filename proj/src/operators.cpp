#include "nemflow/operators.hpp"

namespace nemflow {

Array2 laplacian(const Array2& a, double hx, double hy) {
    Array2 out(a.nx(), a.ny());
    const double ix2 = 1.0 / (hx * hx), iy2 = 1.0 / (hy * hy);
    for (int j = 0; j < a.ny(); ++j)
        for (int i = 0; i < a.nx(); ++i)
            out(i, j) = (a(i + 1, j) - 2.0 * a(i, j) + a(i - 1, j)) * ix2 +
                        (a(i, j + 1) - 2.0 * a(i, j) + a(i, j - 1)) * iy2;
    return out;
}

ScalarField laplacian(const ScalarField& s) {
    ScalarField out(s.grid);
    out.a = laplacian(s.a, s.grid.hx, s.grid.hy);
    return out;
}

DirectorField laplacian(const DirectorField& d) {
    DirectorField out(d.grid, d.m);
    for (int c = 0; c < d.m; ++c) out.c[c] = laplacian(d.c[c], d.grid.hx, d.grid.hy);
    return out;
}

VelocityField laplacian(const VelocityField& v) {
    VelocityField out(v.grid);
    out.u = laplacian(v.u, v.grid.hx, v.grid.hy);
    out.v = laplacian(v.v, v.grid.hx, v.grid.hy);
    return out;
}

ScalarField divergence(const VelocityField& w) {
    const Grid& g = w.grid;
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.a(i, j) =
                (w.u(i + 1, j) - w.u(i, j)) / g.hx + (w.v(i, j + 1) - w.v(i, j)) / g.hy;
    return out;
}

VelocityField gradient_cc_to_mac(const ScalarField& p) {
    const Grid& g = p.grid;
    VelocityField out(g);
    const bool per = g.periodic();
    const int i0 = per ? 0 : 1, i1 = per ? g.nx - 1 : g.nx - 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = i0; i <= i1; ++i)
            out.u(i, j) = (p.a(i, j) - p.a(i - 1, j)) / g.hx;
    const int j0 = per ? 0 : 1, j1 = per ? g.ny - 1 : g.ny - 1;
    for (int j = j0; j <= j1; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.v(i, j) = (p.a(i, j) - p.a(i, j - 1)) / g.hy;
    if (per) {
        for (int j = 0; j < g.ny; ++j) out.u(g.nx, j) = out.u(0, j);
        for (int i = 0; i < g.nx; ++i) out.v(i, g.ny) = out.v(i, 0);
    }
    return out;
}

DirectorField advect_director(const VelocityField& w, const DirectorField& d) {
    const Grid& g = d.grid;
    DirectorField out(g, d.m);
    for (int c = 0; c < d.m; ++c) {
        const Array2& a = d.c[c];
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double uc = 0.5 * (w.u(i, j) + w.u(i + 1, j));
                const double vc = 0.5 * (w.v(i, j) + w.v(i, j + 1));
                out.c[c](i, j) = uc * (a(i + 1, j) - a(i - 1, j)) / (2.0 * g.hx) +
                                 vc * (a(i, j + 1) - a(i, j - 1)) / (2.0 * g.hy);
            }
    }
    return out;
}

VelocityField advect_velocity(const VelocityField& w) {
    const Grid& g = w.grid;
    VelocityField out(g);
    const bool per = g.periodic();
    const double ihx = 1.0 / g.hx, ihy = 1.0 / g.hy;

    // u component.  Cell averages uc(I,j) = (u(I)+u(I+1))/2, node averages
    // vn, un at the corners above/below the face.
    const int iu0 = per ? 0 : 1, iu1 = per ? g.nx - 1 : g.nx - 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = iu0; i <= iu1; ++i) {
            const double ucm = 0.5 * (w.u(i - 1, j) + w.u(i, j));
            const double ucp = 0.5 * (w.u(i, j) + w.u(i + 1, j));
            const double vnm = 0.5 * (w.v(i - 1, j) + w.v(i, j));
            const double vnp = 0.5 * (w.v(i - 1, j + 1) + w.v(i, j + 1));
            const double unm = 0.5 * (w.u(i, j - 1) + w.u(i, j));
            const double unp = 0.5 * (w.u(i, j) + w.u(i, j + 1));
            const double div_form = (ucp * ucp - ucm * ucm) * ihx + (vnp * unp - vnm * unm) * ihy;
            const double adv_form =
                0.5 * (ucm * (w.u(i, j) - w.u(i - 1, j)) + ucp * (w.u(i + 1, j) - w.u(i, j))) * ihx +
                0.5 * (vnm * (w.u(i, j) - w.u(i, j - 1)) + vnp * (w.u(i, j + 1) - w.u(i, j))) * ihy;
            out.u(i, j) = 0.5 * (div_form + adv_form);
        }

    // v component, roles swapped.
    const int jv0 = per ? 0 : 1, jv1 = per ? g.ny - 1 : g.ny - 1;
    for (int j = jv0; j <= jv1; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double vcm = 0.5 * (w.v(i, j - 1) + w.v(i, j));
            const double vcp = 0.5 * (w.v(i, j) + w.v(i, j + 1));
            const double unm = 0.5 * (w.u(i, j - 1) + w.u(i, j));
            const double unp = 0.5 * (w.u(i + 1, j - 1) + w.u(i + 1, j));
            const double vnm = 0.5 * (w.v(i - 1, j) + w.v(i, j));
            const double vnp = 0.5 * (w.v(i, j) + w.v(i + 1, j));
            const double div_form = (vcp * vcp - vcm * vcm) * ihy + (unp * vnp - unm * vnm) * ihx;
            const double adv_form =
                0.5 * (vcm * (w.v(i, j) - w.v(i, j - 1)) + vcp * (w.v(i, j + 1) - w.v(i, j))) * ihy +
                0.5 * (unm * (w.v(i, j) - w.v(i - 1, j)) + unp * (w.v(i + 1, j) - w.v(i, j))) * ihx;
            out.v(i, j) = 0.5 * (div_form + adv_form);
        }

    if (per) {
        for (int j = 0; j < g.ny; ++j) out.u(g.nx, j) = out.u(0, j);
        for (int i = 0; i < g.nx; ++i) out.v(i, g.ny) = out.v(i, 0);
    }
    return out;
}

}  // namespace nemflow
