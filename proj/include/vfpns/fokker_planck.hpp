#pragma once

#include "vfpns/field.hpp"
#include "vfpns/grid.hpp"
#include "vfpns/parallel.hpp"
#include "vfpns/params.hpp"

namespace vfpns {

// Implicit Fokker-Planck update in symmetrized form. With h = f/sqrt(M) the
// scaled operator becomes the velocity-space 5-point stencil
//   Ltilde h = (h_E + h_W + h_N + h_S - Mbar h) / dv^2,
//   Mbar     = (sqrtM_E + sqrtM_W + sqrtM_N + sqrtM_S) / sqrtM,
// which is symmetric. Values beyond the velocity box are zero for h and for
// the sqrtM neighbor sums alike, so Ltilde(sqrtM) = 0 on the whole box and
// sqrtM spans the kernel exactly.

/// Mbar diagonal from a sqrt-Maxwellian block (zero extension at the box edge).
void mbar_block(const double* sqrt_m, int nv, double* out);

/// out = Ltilde h for one spatial cell.
void apply_ltilde_block(const double* h, const double* mbar, int nv, double dv, double* out);

/// out = (1 + coef*Mbar) h - coef * (neighbor sum), i.e. (I - lam*Ltilde) h
/// with coef = lam/dv^2. This is the CG system operator.
void apply_fp_system_block(const double* h, const double* mbar, double coef, int nv, double* out);

struct FpStats {
    long total_iters = 0;
    int max_iters = 0;
    double worst_resid = 0.0;  // relative, f-weighted
    double min_f = 0.0;        // smallest f value produced (before any clipping)
};

/// Solves the implicit kinetic update cell by cell:
///   order 1: (1 - dt/(i^(5/3) eps) Ltilde) h = rhs / sqrtM,        f = h sqrtM
///   order 2: (1 - 2dt/(3 i^(5/3) eps) Ltilde) h = rhs / (3 sqrtM), f = h sqrtM
/// where rhs carries the explicit transport and force terms and sqrtM is
/// centered on u_new. Conjugate gradient, unpreconditioned by default
/// (opt.fp_jacobi enables diagonal preconditioning); convergence is measured
/// on the residual weighted back to f scale. Throws SolverError when any cell
/// fails to reach tolerance, reporting the worst cell.
FpStats solve_fp(const PhaseField& rhs, const VecField2D& u_new, const Field2D& eps, int size,
                 double dt, int order, const Grid& g, const SolverOptions& opt, ThreadPool* pool,
                 PhaseField& f_out);

} // namespace vfpns
