#pragma once

#include "vfpns/grid.hpp"
#include "vfpns/parallel.hpp"
#include "vfpns/params.hpp"
#include "vfpns/state.hpp"

namespace vfpns {

// One full time step: (1) advance densities with the transport moment,
// (2) pressureless viscosity step with the (1-alpha) drag share,
// (3) variable-density projection with the remaining drag,
// (4) implicit kinetic solve against the new fluid velocity, then J update.
// The BDF2 variant extrapolates the explicit terms from two levels and uses
// the incremental pressure form.

struct StepStats {
    int cg_helmholtz = 0;
    int cg_poisson = 0;
    int cg_fp_max = 0;       // largest per-cell iteration count
    long cg_fp_total = 0;
    double min_f = 0.0;      // most negative distribution value produced
    double n_gap_inf = 0.0;  // max over species of ||n - density(f)||_inf
    double div_inf = 0.0;    // ||div u^{k+1}||_inf
    double checkerboard = 0.0;
};

StepStats step_first_order(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool);

/// Throws SolverError when invoked without two consistent levels.
StepStats step_second_order(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool);

/// Seeds the BDF2 history with one first-order step.
StepStats bootstrap_step(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool);

/// Dispatches on prm.order, bootstrapping when history is missing.
StepStats advance(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool);

/// Recomputes the stored moments (n from f, J from f) and fills all ghosts;
/// used when states are assembled by hand.
void refresh_state(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool);

} // namespace vfpns
