#pragma once

#include <cmath>

#include "vfpns/field.hpp"
#include "vfpns/grid.hpp"
#include "vfpns/parallel.hpp"

namespace vfpns {

// Velocity moments by the 2D trapezoidal rule (weights 1/2 at the extreme
// indices per direction). Reductions fold the symmetric velocity pairs
// (m, nv-1-m) before accumulating, so any integrand odd in v1 or v2 against a
// field of matching parity sums to exactly zero, and the summation order is
// fixed for reproducibility.

/// Integral of w(v1,v2) * f over the velocity box for one spatial cell.
template <class W>
double trapezoid_moment_cell(const double* blk, const Grid& g, W&& w) {
    const int nv = g.nv;
    const int half = nv / 2;
    double total = 0.0;
    for (int mp = 0; mp < half; ++mp) {
        const int mq = nv - 1 - mp;
        const double v2m = g.v[mp];
        const double v2p = g.v[mq];
        double row = 0.0;
        for (int m = 0; m < half; ++m) {
            const int mm = nv - 1 - m;
            const double v1m = g.v[m];
            const double v1p = g.v[mm];
            const double f00 = blk[m + static_cast<size_t>(nv) * mp];
            const double f10 = blk[mm + static_cast<size_t>(nv) * mp];
            const double f01 = blk[m + static_cast<size_t>(nv) * mq];
            const double f11 = blk[mm + static_cast<size_t>(nv) * mq];
            const double a = w(v1m, v2m) * f00 + w(v1p, v2m) * f10;
            const double b = w(v1m, v2p) * f01 + w(v1p, v2p) * f11;
            row += g.wv[m] * (a + b);
        }
        total += g.wv[mp] * row;
    }
    return total * g.dv * g.dv;
}

/// Field version of the above, interior and ghost cells alike.
template <class W>
Field2D trapezoid_moment(const PhaseField& f, const Grid& g, W&& w) {
    Field2D out(g.nx);
    for (int jp = 0; jp <= g.nx + 1; ++jp)
        for (int j = 0; j <= g.nx + 1; ++j)
            out(j, jp) = trapezoid_moment_cell(f.block(j, jp), g, w);
    return out;
}

/// All moments the scheme needs, in one sweep per cell.
struct CellMoments {
    double n, j1, j2, pxx, pxy, pyy;
};
CellMoments moments_cell(const double* blk, const Grid& g);

/// Species moments: n (number density), J = size * first moment,
/// P = size * second moment. Computed on interior and ghost cells.
struct MomentSet {
    Field2D n;
    VecField2D J;
    Field2D pxx, pxy, pyy;

    MomentSet() = default;
    explicit MomentSet(int nx) : n(nx), J(nx), pxx(nx), pxy(nx), pyy(nx) {}
};
MomentSet compute_moments(const PhaseField& f, const Grid& g, int size, ThreadPool* pool);

/// Number density alone (interior plus ghosts).
Field2D density_moment(const PhaseField& f, const Grid& g, ThreadPool* pool);

/// Local Maxwellian M_{u,i}(v) = (i/2pi) exp(-i|v-u|^2/2).
double maxwellian_value(int size, double v1, double v2, double ux, double uy);

/// sqrt(M_{u,i}) over one velocity block.
void sqrt_maxwellian_block(int size, double ux, double uy, const Grid& g, double* out);

/// Full Maxwellian phase field n==1 everywhere (tests and diagnostics).
PhaseField maxwellian_field(const VecField2D& u, int size, const Grid& g);

/// Composite density nu = sum_i i * n_i (interior plus ghosts).
Field2D composite_density(const std::vector<Field2D>& n, const Grid& g);

/// Effective projection density
///   rho_eps = 1 + sum_i c_i * i * n_i,
///   c_i = alpha*kappa*dt   / (i^(2/3) eps +   alpha*dt)   (order 1)
///   c_i = 2*alpha*kappa*dt / (3 i^(2/3) eps + 2 alpha*dt) (order 2).
Field2D rho_eps(const std::vector<Field2D>& n_new, const Field2D& eps, double kappa,
                double alpha, double dt, int order, const Grid& g);

/// Drag weight c_i as above, as a field (also used to combine J* into the
/// projection right-hand side).
Field2D drag_weight(int size, const Field2D& eps, double kappa, double alpha, double dt,
                    int order, const Grid& g);

} // namespace vfpns
