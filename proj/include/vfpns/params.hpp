#pragma once

#include <algorithm>
#include <cmath>

#include "vfpns/field.hpp"
#include "vfpns/grid.hpp"

namespace vfpns {

/// Reference temperature; the scaled system fixes it to one.
inline constexpr double kThetaBar = 1.0;

/// Iterative-solver knobs. Tolerances are pinned here, not per run.
struct SolverOptions {
    double tol_cg_fp = 1e-10;     // kinetic velocity solves, residual weighted back to f
    double tol_pcg_fluid = 1e-10; // Helmholtz and pressure Poisson, relative l2
    double tol_div = 1e-8;        // max discrete divergence accepted after projection
    int max_iter_factor = 10;     // max iterations = factor * number of unknowns
    bool fp_jacobi = false;       // Jacobi preconditioner for the kinetic solves
    bool clip_negative_f = false; // clip f to zero after the kinetic solve
};

/// Everything a time step needs besides the state itself.
struct SchemeParams {
    int n_species = 2;     // species sizes are 1..n_species
    double kappa = 2.0;    // coupling constant (particle/fluid density ratio)
    double re = 1.0;       // Reynolds number
    double gravity = 0.0;  // external potential strength, phi = g*y
    int order = 2;         // 1 = backward Euler splitting, 2 = BDF2 variant
    double dt = 0.0;
    Field2D eps;           // Stokes-number field, values in (0, ~1]
    Field2D phi;           // external potential at cell centers (ghosts included)
    bool injection = false;
    SolverOptions solver;

    /// Drag-split weight: 1/2 for the first-order scheme, O(dt) for BDF2.
    double alpha() const { return order == 1 ? 0.5 : std::min(0.5, dt); }

    /// i^(2/3) for species size i (1-based).
    static double size_pow23(int size) { return std::cbrt(static_cast<double>(size) * size); }
    /// i^(5/3).
    static double size_pow53(int size) { return size * size_pow23(size); }

    void validate(const Grid& grid) const;  // throws ConfigError
};

} // namespace vfpns
