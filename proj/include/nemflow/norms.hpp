#pragma once

#include "nemflow/fields.hpp"

namespace nemflow {

enum class NormKind { L2, H1semi, H2semi, Linf };

// Discrete norms with fixed row-major reduction order.
//
// L2 uses midpoint quadrature (cells) resp. trapezoid-consistent face weights
// (velocity).  H1semi sums squared face differences; on bounded grids the
// boundary links built from the ghost layer carry weight 1/2, which makes
//   <-lap(f), w> = sum_links grad f . grad w
// an exact identity whenever w has a zero-trace ghost pattern.  The energy
// audit depends on that identity, so the weights are not adjustable.
// H2semi is the L2 norm of the 5-point Laplacian.  Ghost layers must be
// current for the difference-based kinds.

double norm(const ScalarField& f, NormKind kind);
double norm(const DirectorField& d, NormKind kind);
double norm(const VelocityField& v, NormKind kind);

// sqrt(L2^2 + H1semi^2)
double h1_norm(const VelocityField& v);
double h1_norm(const DirectorField& d);

// Inner products matching the L2 norms above.
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VelocityField& a, const VelocityField& b);

// Integral of a cell-centered density (midpoint rule).
double cell_integral(const ScalarField& f);

}  // namespace nemflow
