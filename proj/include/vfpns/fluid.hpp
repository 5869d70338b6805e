#pragma once

#include <vector>

#include "vfpns/field.hpp"
#include "vfpns/grid.hpp"
#include "vfpns/moments.hpp"
#include "vfpns/params.hpp"

namespace vfpns {

// Fluid half of the splitting on the collocated grid. All first derivatives
// are wide centered differences; boundary closure is applied inside the
// operators: no-slip arguments mirror with a minus sign, pressure-like
// arguments mirror with a plus sign (homogeneous Neumann). The divergence
// and gradient below are exact negative adjoints of each other, which makes
// the variable-coefficient pressure operator symmetric and keeps the
// discrete divergence of the projected velocity at the CG residual level.

/// D_ns w = centered divergence with minus-mirror closure (interior values in,
/// interior values out; w ghosts are not read).
Field2D divergence_noslip(const VecField2D& w, const Grid& g);

/// G_neu q = centered gradient with plus-mirror (Neumann) closure.
VecField2D gradient_neumann(const Field2D& q, const Grid& g);

/// Compact 5-point Laplacian with no-slip closure (missing neighbor = -center).
Field2D laplacian_noslip(const Field2D& comp, const Grid& g);

/// Divergence-form convection grad.(u (x) u); reads the stored ghosts of u.
VecField2D convection(const VecField2D& u, const Grid& g);

/// Divergence of the species stress tensor (reads the moment ghosts).
VecField2D stress_divergence(const MomentSet& mom, const Grid& g);

struct CgStats {
    int iters = 0;
    double rel_resid = 0.0;
};

/// Solves (react - (1/Re) Lap_ns) out = rhs by Jacobi-preconditioned CG.
/// react must be strictly positive (throws SolverError otherwise).
CgStats helmholtz_solve(const Field2D& react, double re, const Field2D& rhs, const Grid& g,
                        const SolverOptions& opt, Field2D& out);

/// Solves D_ns[(G_neu q)/rho] = rhs for the zero-mean pressure unknown.
/// dt_eff scales the divergence-target stopping rule: iteration continues
/// until dt_eff*linf(residual) <= tol_div/2 as well as the relative l2 test.
/// Throws SolverError on a noncompatible right-hand side or CG failure.
CgStats poisson_var_solve(const Field2D& rho, const Field2D& rhs, double dt_eff, const Grid& g,
                          const SolverOptions& opt, Field2D& q);

/// Level data handed to the pressureless step by the integrator. For order 1
/// the dagger entries alias the k-level data.
struct FluidStepInput {
    const VecField2D* u_k = nullptr;
    const VecField2D* u_km1 = nullptr;          // order 2 only
    const Field2D* p_k = nullptr;               // order 2 only
    std::vector<const VecField2D*> J_k;         // per species
    std::vector<const VecField2D*> J_km1;       // order 2 only
    std::vector<const Field2D*> n_dag;          // n^k (order 1) or 2n^k - n^{k-1}
    std::vector<const MomentSet*> stress_dag;   // moments of f^k or of 2f^k - f^{k-1}
    std::vector<const Field2D*> n_new;          // step-1 densities
    const VecField2D* grad_phi = nullptr;       // null when no external force
};

struct PressurelessResult {
    VecField2D u_star;                // no-slip ghosts filled
    std::vector<VecField2D> j_star;   // interior values
    int cg_iters = 0;
};

/// Viscosity step with the (1-alpha) share of the drag, eliminated to a
/// Helmholtz problem for u*; J* recovered in closed form.
PressurelessResult pressureless_step(const FluidStepInput& in, const SchemeParams& prm,
                                     const Grid& g);

struct ProjectionResult {
    VecField2D u_new;                 // divergence-free, no-slip ghosts filled
    Field2D p_new;                    // zero-mean, Neumann ghosts filled
    std::vector<VecField2D> j_star2;  // interior values
    int cg_iters = 0;
    double checkerboard = 0.0;        // amplitude of the alternating pressure mode
};

/// Projection with the remaining alpha share of the drag: variable-coefficient
/// Poisson solve (pressure increment for order 2), divergence-free update,
/// J** recovery.
ProjectionResult projection_step(const VecField2D& u_star, const std::vector<VecField2D>& j_star,
                                 const std::vector<const Field2D*>& n_new, const Field2D& p_old,
                                 const SchemeParams& prm, const Grid& g);

} // namespace vfpns
