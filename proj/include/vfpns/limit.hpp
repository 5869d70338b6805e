#pragma once

#include "vfpns/field.hpp"
#include "vfpns/grid.hpp"
#include "vfpns/params.hpp"

namespace vfpns {

// Standalone solver for the vanishing-Stokes-number limit system: an
// incompressible Navier-Stokes flow with composite density 1 + kappa*nu,
//   d_t nu + div(nu u) = 0,
//   d_t((1+kappa nu)u) + Div((1+kappa nu)u(x)u) + grad(p + kappa nu)
//       + kappa nu grad(phi) - (1/Re) Lap u = 0,   div u = 0.
// Used as the cross-check for the full solver's asymptotic behavior.

struct LimitState {
    int step = 0;
    double time = 0.0;
    Field2D nu;      // composite density, even-mirror ghosts
    VecField2D u;    // no-slip ghosts
    Field2D p;       // Neumann ghosts
    bool has_prev = false;
    Field2D nu_prev;
    VecField2D u_prev;
    Field2D p_prev;

    // Frozen composition fractions r_i = n_i/nu (densities advect with the
    // common velocity, so the ratios are material invariants). They weight
    // the per-species Maxwellian flux splitting and the kinetic-pressure
    // gradient below. Default: a single species.
    std::vector<double> composition{1.0};

    // Weight of the kinetic-pressure gradient: the Maxwellian stress of
    // species i carries n_i * identity (variance 1/i), so the limiting
    // momentum equation holds kappa grad(sum_i n_i) = kappa grad(sum_i r_i nu).
    double thermal_weight = 1.0;

    LimitState() = default;
    explicit LimitState(int nx) : nu(nx), u(nx), p(nx), nu_prev(nx), u_prev(nx), p_prev(nx) {}
};

struct LimitStepStats {
    int cg_helmholtz = 0;
    int cg_poisson = 0;
    double div_inf = 0.0;
};

/// Conservative limited-upwind divergence of (nu u). The face flux is the
/// vanishing-Stokes-number limit of the kinetic transport: per species a
/// Maxwellian flux splitting
///   F = A_i^+(u_face) recon_L + A_i^-(u_face) recon_R,
///   A_i^+(u) = u Phi(u sqrt(i)) + phi(u sqrt(i))/sqrt(i),  A_i^- = u - A_i^+,
/// weighted by i*r_i and sharing the van Leer reconstruction of the kinetic
/// module; wall faces carry zero flux (specular pairing).
Field2D nu_flux_divergence(const Field2D& nu, const VecField2D& u,
                           const std::vector<double>& composition, const Grid& g);

/// One step of the limiting scheme; density advection with u^k, momentum
/// Helmholtz solve, projection with density 1 + kappa*nu^{k+1}.
LimitStepStats limit_step_first_order(LimitState& s, const SchemeParams& prm, const Grid& g);

/// BDF2 variant with extrapolated transport and incremental pressure.
/// Requires history (throws SolverError without it); seed it with one
/// first-order step.
LimitStepStats limit_step_second_order(LimitState& s, const SchemeParams& prm, const Grid& g);

/// Advances with prm.order, bootstrapping BDF2 with one first-order step.
LimitStepStats limit_step(LimitState& s, const SchemeParams& prm, const Grid& g);

} // namespace vfpns
