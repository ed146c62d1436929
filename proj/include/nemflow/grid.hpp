#pragma once

#include <string>

#include "nemflow/errors.hpp"

namespace nemflow {

enum class BcMode { dirichlet, free_slip, periodic };

std::string to_string(BcMode m);
BcMode bc_mode_from_string(const std::string& s);

// Uniform rectangular grid, cell-centered scalars and MAC-staggered velocity.
//
//   cell centers   ((i+1/2) hx, (j+1/2) hy)   i in [0,nx), j in [0,ny)
//   u faces        (i hx, (j+1/2) hy)         i in [0,nx], j in [0,ny)
//   v faces        ((i+1/2) hx, j hy)         i in [0,nx), j in [0,ny]
//
// bc_mode is fixed for the lifetime of a run.
struct Grid {
    int nx = 0, ny = 0;
    double Lx = 1.0, Ly = 1.0;
    double hx = 0.0, hy = 0.0;
    BcMode bc_mode = BcMode::dirichlet;

    Grid() = default;
    Grid(int nx_, int ny_, double Lx_, double Ly_, BcMode mode)
        : nx(nx_), ny(ny_), Lx(Lx_), Ly(Ly_), hx(Lx_ / nx_), hy(Ly_ / ny_), bc_mode(mode) {
        if (nx < 4 || ny < 4) throw ConfigError("grid: nx, ny must be >= 4");
        if (!(Lx > 0.0) || !(Ly > 0.0)) throw ConfigError("grid: Lx, Ly must be > 0");
    }

    bool periodic() const { return bc_mode == BcMode::periodic; }

    double xc(int i) const { return (i + 0.5) * hx; }  // cell center
    double yc(int j) const { return (j + 0.5) * hy; }
    double xn(int i) const { return i * hx; }  // node / face line
    double yn(int j) const { return j * hy; }

    bool operator==(const Grid& o) const {
        return nx == o.nx && ny == o.ny && Lx == o.Lx && Ly == o.Ly && bc_mode == o.bc_mode;
    }
};

}  // namespace nemflow
