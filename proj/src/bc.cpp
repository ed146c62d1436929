#include "nemflow/bc.hpp"

namespace nemflow {

std::string to_string(BcMode m) {
    switch (m) {
        case BcMode::dirichlet: return "dirichlet";
        case BcMode::free_slip: return "free_slip";
        case BcMode::periodic: return "periodic";
    }
    return "?";
}

BcMode bc_mode_from_string(const std::string& s) {
    if (s == "dirichlet") return BcMode::dirichlet;
    if (s == "free_slip") return BcMode::free_slip;
    if (s == "periodic") return BcMode::periodic;
    throw ConfigError("bc_mode: unknown value '" + s + "' (expected dirichlet|free_slip|periodic)");
}

BoundaryData BoundaryData::from_function(const Grid& g, int m,
                                         const std::function<double(double, double, int)>& fn) {
    BoundaryData bd(g, m);
    for (int j = 0; j < g.ny; ++j)
        for (int c = 0; c < m; ++c) {
            bd.at_left(j, c) = fn(0.0, g.yc(j), c);
            bd.at_right(j, c) = fn(g.Lx, g.yc(j), c);
        }
    for (int i = 0; i < g.nx; ++i)
        for (int c = 0; c < m; ++c) {
            bd.at_bottom(i, c) = fn(g.xc(i), 0.0, c);
            bd.at_top(i, c) = fn(g.xc(i), g.Ly, c);
        }
    return bd;
}

namespace {

// Periodic wrap for a cell-centered array, corners included.
void wrap_cc(Array2& a) {
    const int nx = a.nx(), ny = a.ny();
    for (int j = 0; j < ny; ++j) {
        a(-1, j) = a(nx - 1, j);
        a(nx, j) = a(0, j);
    }
    for (int i = -1; i <= nx; ++i) {
        a(i, -1) = a(i, ny - 1);
        a(i, ny) = a(i, 0);
    }
}

void neumann_cc(Array2& a) {
    const int nx = a.nx(), ny = a.ny();
    for (int j = 0; j < ny; ++j) {
        a(-1, j) = a(0, j);
        a(nx, j) = a(nx - 1, j);
    }
    for (int i = 0; i < nx; ++i) {
        a(i, -1) = a(i, 0);
        a(i, ny) = a(i, ny - 1);
    }
}

}  // namespace

void apply_bc(ScalarField& s) {
    if (s.grid.periodic())
        wrap_cc(s.a);
    else
        neumann_cc(s.a);
}

void apply_bc(DirectorField& d, const BoundaryData* bd) {
    const Grid& g = d.grid;
    const int nx = g.nx, ny = g.ny;
    switch (g.bc_mode) {
        case BcMode::dirichlet: {
            if (!bd) throw ConfigError("apply_bc: dirichlet mode requires director boundary data");
            if (bd->m != d.m) throw ConfigError("apply_bc: boundary data has wrong component count");
            for (int c = 0; c < d.m; ++c) {
                Array2& a = d.c[c];
                for (int j = 0; j < ny; ++j) {
                    a(-1, j) = 2.0 * bd->at_left(j, c) - a(0, j);
                    a(nx, j) = 2.0 * bd->at_right(j, c) - a(nx - 1, j);
                }
                for (int i = 0; i < nx; ++i) {
                    a(i, -1) = 2.0 * bd->at_bottom(i, c) - a(i, 0);
                    a(i, ny) = 2.0 * bd->at_top(i, c) - a(i, ny - 1);
                }
            }
            break;
        }
        case BcMode::free_slip: {
            if (bd) throw ConfigError("apply_bc: free-slip mode forbids director trace data");
            for (int c = 0; c < d.m; ++c) neumann_cc(d.c[c]);
            break;
        }
        case BcMode::periodic: {
            if (bd) throw ConfigError("apply_bc: periodic mode forbids director trace data");
            for (int c = 0; c < d.m; ++c) wrap_cc(d.c[c]);
            break;
        }
    }
}

void apply_bc(VelocityField& w) {
    const Grid& g = w.grid;
    const int nx = g.nx, ny = g.ny;
    if (g.bc_mode == BcMode::periodic) {
        // Mirror the duplicated closing faces first, then wrap ghosts.
        for (int j = 0; j < ny; ++j) w.u(nx, j) = w.u(0, j);
        for (int i = 0; i < nx; ++i) w.v(i, ny) = w.v(i, 0);
        for (int j = 0; j < ny; ++j) {
            w.u(-1, j) = w.u(nx - 1, j);
            w.u(nx + 1, j) = w.u(1, j);
        }
        for (int i = -1; i <= nx + 1; ++i) {
            w.u(i, -1) = w.u(i, ny - 1);
            w.u(i, ny) = w.u(i, 0);
        }
        for (int i = 0; i < nx; ++i) {
            w.v(i, -1) = w.v(i, ny - 1);
            w.v(i, ny + 1) = w.v(i, 1);
        }
        for (int j = -1; j <= ny + 1; ++j) {
            w.v(-1, j) = w.v(nx - 1, j);
            w.v(nx, j) = w.v(0, j);
        }
        return;
    }

    const double tang = (g.bc_mode == BcMode::dirichlet) ? -1.0 : 1.0;
    // No normal flow through walls, exactly.
    for (int j = 0; j < ny; ++j) {
        w.u(0, j) = 0.0;
        w.u(nx, j) = 0.0;
        w.u(-1, j) = 0.0;
        w.u(nx + 1, j) = 0.0;
    }
    for (int i = 0; i < nx; ++i) {
        w.v(i, 0) = 0.0;
        w.v(i, ny) = 0.0;
        w.v(i, -1) = 0.0;
        w.v(i, ny + 1) = 0.0;
    }
    // Tangential ghosts.
    for (int i = 0; i <= nx; ++i) {
        w.u(i, -1) = tang * w.u(i, 0);
        w.u(i, ny) = tang * w.u(i, ny - 1);
    }
    for (int j = 0; j <= ny; ++j) {
        w.v(-1, j) = tang * w.v(0, j);
        w.v(nx, j) = tang * w.v(nx - 1, j);
    }
}

}  // namespace nemflow
