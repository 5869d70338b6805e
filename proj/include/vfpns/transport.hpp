#pragma once

#include "vfpns/field.hpp"
#include "vfpns/grid.hpp"
#include "vfpns/parallel.hpp"

namespace vfpns {

// Second-order upwind transport with the van Leer limiter, dimension by
// dimension. Fluxes are conservative; interior sums telescope to wall fluxes.

/// van Leer limited slope in harmonic form: phi(r)*b with r = a/b equals
/// 2ab/(a+b) when the slopes agree in sign and 0 otherwise (degenerate
/// ratios fall back to first order).
inline double vl_slope(double a, double b) {
    const double p = a * b;
    return p > 0.0 ? 2.0 * p / (a + b) : 0.0;
}

/// Upwind flux through the face between cells with values f0 | f1
/// (fm1, f2 are the next cells out on each side), wind w.
inline double face_flux(double w, double fm1, double f0, double f1, double f2) {
    return w >= 0.0 ? w * (f0 + 0.5 * vl_slope(f0 - fm1, f1 - f0))
                    : w * (f1 - 0.5 * vl_slope(f1 - f0, f2 - f1));
}

/// First-order flux used at the spatial wall faces; together with specular
/// ghosts this makes the wall mass flux cancel exactly in reflection pairs.
inline double face_flux_wall(double w, double f0, double f1) {
    return w >= 0.0 ? w * f0 : w * f1;
}

/// out = discrete v . grad_x f at interior spatial cells (spatial ghosts of
/// f must be filled).
void advect_x(const PhaseField& f, const Grid& g, ThreadPool* pool, PhaseField& out);

/// acc += scale * (discrete grad_x(phi) . grad_v f). Velocity-space transport
/// with speed -grad(phi), zero beyond the velocity box; grad_phi holds the
/// centered-difference potential gradient at interior cells.
void accel_v(const PhaseField& f, const Grid& g, const VecField2D& grad_phi, ThreadPool* pool,
             double scale, PhaseField& acc);

/// Centered gradient of a scalar using its stored ghost values.
VecField2D centered_gradient_raw(const Field2D& s, const Grid& g);

} // namespace vfpns
