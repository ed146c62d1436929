#pragma once

#include "nemflow/fields.hpp"

namespace nemflow {

// Ghost-layer fills.  All are idempotent: ghosts are recomputed from interior
// values (and boundary data), never from previous ghost content.
//
// Director:
//   dirichlet   ghost = 2 g - interior   (centered trace equals g)
//   free_slip   ghost = interior         (zero normal difference)
//   periodic    wrap
// Scalars (pressure-type) use the zero-normal-difference fill on walls.
// Velocity walls are at rest: normal faces are pinned to exactly 0; the
// tangential ghost is -interior (no-slip) or +interior (free-slip).

void apply_bc(ScalarField& s);
void apply_bc(DirectorField& d, const BoundaryData* bd);
void apply_bc(VelocityField& v);

}  // namespace nemflow
