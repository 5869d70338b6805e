#pragma once

#include "vfpns/grid.hpp"
#include "vfpns/parallel.hpp"
#include "vfpns/params.hpp"
#include "vfpns/state.hpp"

namespace vfpns {

// Monitored quantities. Everything here is read-only over the state; spatial
// sums run in a fixed cell order (compensated where a conservation check
// needs head-room below the drift tolerances).

/// Total mass of one species: trapezoid density summed over interior cells
/// times dx^2, compensated summation.
double species_mass(const PhaseField& f, const Grid& g, ThreadPool* pool);

/// || f - n M_{u} ||_1 with the trapezoid rule in v and cell sums in x.
double maxwellian_distance(const PhaseField& f, const Field2D& n, const VecField2D& u, int size,
                           const Grid& g, ThreadPool* pool);

struct EnergyTerms {
    double functional = 0.0;      // kappa sum_i int f(ln f + 1 + i phi + i|v|^2/2) + int |u|^2/2
    double viscous = 0.0;         // int |grad u|^2
    double fp_dissipation = 0.0;  // kappa/eps sum_i int |(v-u) sqrt(i^(1/3) f) + grad_v f / sqrt(i^(5/3) f)|^2
};
/// The energy-entropy functional and its dissipation terms; f is clamped at
/// 1e-30 inside logarithms and square roots (presets carry near-vacuum
/// backgrounds).
EnergyTerms energy_entropy(const SimState& s, const SchemeParams& prm, const Grid& g,
                           ThreadPool* pool);

// Norms (plain grid sums; interior cells).
double field_linf(const Field2D& a, const Grid& g);
double vec_linf(const VecField2D& a, const Grid& g);
double vec_l2(const VecField2D& a, const Grid& g);
double phase_l1(const PhaseField& f, const Grid& g);
double phase_l2(const PhaseField& f, const Grid& g);

/// Conservative 2x coarsening in space; the velocity grid must either match
/// or be exactly twice as fine (then 2x2 velocity cells are averaged too).
/// Throws ConfigError on incompatible grids.
PhaseField coarsen_phase(const PhaseField& fine, const Grid& gf, const Grid& gc);
VecField2D coarsen_vec(const VecField2D& fine, const Grid& gf, const Grid& gc);

/// l1 norm of (coarsened fine - coarse), both on the coarse grid.
double phase_diff_l1(const PhaseField& fine_on_coarse, const PhaseField& coarse, const Grid& gc);
double vec_diff_l2(const VecField2D& a, const VecField2D& b, const Grid& g);

/// order = log2(e_coarse / e_fine).
double convergence_order(double e_coarse, double e_fine);

} // namespace vfpns
