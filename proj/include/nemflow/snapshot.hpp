#pragma once

#include <string>

#include "nemflow/simulator.hpp"

namespace nemflow {

// Binary snapshot, magic "NEMQ1", little-endian:
//   bytes 0..4   magic
//   u32          nx, ny, m
//   f64          Lx, Ly, t
//   u8           bc_mode tag (0 dirichlet, 1 free_slip, 2 periodic)
//   f64 arrays   u ((nx+1) x ny), v (nx x (ny+1)), p (nx x ny),
//                d components (m arrays of nx x ny)
// Arrays are row-major, i fastest; interior values only (ghosts rebuilt on
// load).  Boundary data is not stored.
void snapshot_write(const SimState& state, const std::string& path);
SimState snapshot_read(const std::string& path);

}  // namespace nemflow
