#pragma once

#include "nemflow/fields.hpp"

namespace nemflow {

// Discrete differential operators on the staggered grid.  All of them are
// pure (inputs untouched, fresh arrays returned) and require the input ghost
// layers to be current.  Outputs are plain arrays: their ghost rings are not
// meaningful unless stated.

// 5-point Laplacian of a single cell-centered or face array.
Array2 laplacian(const Array2& a, double hx, double hy);

ScalarField laplacian(const ScalarField& s);
DirectorField laplacian(const DirectorField& d);        // componentwise
VelocityField laplacian(const VelocityField& v);        // componentwise on faces

// div v at cell centers: (u_{i+1,j}-u_{i,j})/hx + (v_{i,j+1}-v_{i,j})/hy.
ScalarField divergence(const VelocityField& v);

// Face gradient of a cell-centered scalar; discrete adjoint of -divergence
// for fields with zero normal trace.  Normal boundary faces get 0 on bounded
// grids; periodic grids wrap.
VelocityField gradient_cc_to_mac(const ScalarField& p);

// (v . grad) d at cell centers: face-averaged velocity dotted with centered
// differences of d.  Output ghosts unspecified.
DirectorField advect_director(const VelocityField& v, const DirectorField& d);

// (v . grad) v on faces in skew-symmetric form, i.e. the average of the
// divergence and advective forms.  On a uniform MAC grid this discretization
// does not create kinetic energy when div v = 0 discretely, which is what the
// energy audit needs from the advection term.
VelocityField advect_velocity(const VelocityField& v);

}  // namespace nemflow
