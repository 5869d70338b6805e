#pragma once

#include "vfpns/field.hpp"
#include "vfpns/grid.hpp"

namespace vfpns {

// Wall boundary laws. All fills are idempotent and pure given the interior.
// Corner ghosts compose the x-reflection with the y-reflection; the two
// orders agree for these stencils.

/// Specular reflection: x-wall ghosts mirror the first interior cell with the
/// v1 index reflected m -> nv-1-m; y-walls reflect the v2 index.
void fill_ghost_f_specular(PhaseField& f);

/// No-slip: ghost = -(adjacent interior), both components, so the wall
/// midpoint value vanishes to second order.
void fill_ghost_u_noslip(VecField2D& u);
void fill_ghost_odd(Field2D& comp);  // single component version

/// Homogeneous Neumann: ghost = adjacent interior.
void fill_ghost_p_neumann(Field2D& p);

/// Injection inflow on the left wall: ghost cells whose y-center lies in the
/// species' entrance segment are overwritten with the indicator of
/// 2 <= v1 <= 3 (all v2); everywhere else specular reflection stands.
/// Cell membership is decided by cell-center values. species_index is 0-based
/// (size = species_index + 1); only the two paper species have segments.
void apply_injection(PhaseField& f, int species_index, const Grid& grid);

/// Entrance segment [y0, y1] for species_index 0 or 1.
void injection_segment(int species_index, double& y0, double& y1);

} // namespace vfpns
