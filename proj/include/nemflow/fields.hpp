#pragma once

#include <functional>
#include <vector>

#include "nemflow/array2.hpp"
#include "nemflow/grid.hpp"

namespace nemflow {

// Cell-centered scalar (pressure, projection potential, energy densities).
struct ScalarField {
    Grid grid;
    Array2 a;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), a(g.nx, g.ny) {}
};

// MAC-staggered velocity: u on vertical faces, v on horizontal faces.
// For periodic grids the duplicated closing face (u(nx,j) = u(0,j),
// v(i,ny) = v(i,0)) is kept mirrored by the ghost fill.
struct VelocityField {
    Grid grid;
    Array2 u;  // (nx+1) x ny
    Array2 v;  // nx x (ny+1)

    VelocityField() = default;
    explicit VelocityField(const Grid& g) : grid(g), u(g.nx + 1, g.ny), v(g.nx, g.ny + 1) {}
};

// Cell-centered director with m in {2,3} components.
struct DirectorField {
    Grid grid;
    int m = 2;
    std::vector<Array2> c;

    DirectorField() = default;
    DirectorField(const Grid& g, int m_) : grid(g), m(m_), c(m_, Array2(g.nx, g.ny)) {
        if (m_ != 2 && m_ != 3) throw ConfigError("director: m must be 2 or 3");
    }
};

// Time-independent Dirichlet trace of the director on the boundary, one value
// per boundary face midpoint.  left/right are indexed by j (size ny*m),
// bottom/top by i (size nx*m); component c of face k lives at [k*m + c].
struct BoundaryData {
    int m = 2;
    std::vector<double> left, right, bottom, top;

    BoundaryData() = default;
    BoundaryData(const Grid& g, int m_)
        : m(m_),
          left(static_cast<size_t>(g.ny) * m_, 0.0),
          right(static_cast<size_t>(g.ny) * m_, 0.0),
          bottom(static_cast<size_t>(g.nx) * m_, 0.0),
          top(static_cast<size_t>(g.nx) * m_, 0.0) {}

    // fn(x, y, component) -> trace value; sampled at wall face midpoints.
    static BoundaryData from_function(const Grid& g, int m,
                                      const std::function<double(double, double, int)>& fn);

    double& at_left(int j, int comp) { return left[static_cast<size_t>(j) * m + comp]; }
    double at_left(int j, int comp) const { return left[static_cast<size_t>(j) * m + comp]; }
    double& at_right(int j, int comp) { return right[static_cast<size_t>(j) * m + comp]; }
    double at_right(int j, int comp) const { return right[static_cast<size_t>(j) * m + comp]; }
    double& at_bottom(int i, int comp) { return bottom[static_cast<size_t>(i) * m + comp]; }
    double at_bottom(int i, int comp) const { return bottom[static_cast<size_t>(i) * m + comp]; }
    double& at_top(int i, int comp) { return top[static_cast<size_t>(i) * m + comp]; }
    double at_top(int i, int comp) const { return top[static_cast<size_t>(i) * m + comp]; }
};

}  // namespace nemflow
