#pragma once

#include <vector>

#include "vfpns/field.hpp"
#include "vfpns/grid.hpp"

namespace vfpns {

/// One species: distribution plus the macroscopic moments the scheme carries.
/// n follows the density update of the splitting (it is the density used by
/// the fluid steps); J is always the first moment of f. The gap between n and
/// the density recomputed from f is reported as a diagnostic by the stepper.
struct SpeciesState {
    PhaseField f;   // ghosts filled whenever the state is at rest between steps
    Field2D n;      // number density (ghost values derived from ghost f)
    VecField2D J;   // momentum density, J = size * first moment of f

    SpeciesState() = default;
    SpeciesState(int nx, int nv) : f(nx, nv), n(nx), J(nx) {}
};

/// Full simulation state, including the previous level needed by BDF2.
struct SimState {
    int step = 0;
    double time = 0.0;

    VecField2D u;  // fluid velocity, no-slip ghosts filled
    Field2D p;     // pressure, Neumann ghosts filled
    std::vector<SpeciesState> species;

    bool has_prev = false;
    VecField2D u_prev;
    Field2D p_prev;
    std::vector<SpeciesState> species_prev;

    SimState() = default;
    SimState(int nx, int nv, int n_species)
        : u(nx), p(nx), species(), u_prev(nx), p_prev(nx) {
        species.reserve(n_species);
        species_prev.reserve(n_species);
        for (int i = 0; i < n_species; ++i) {
            species.emplace_back(nx, nv);
            species_prev.emplace_back(nx, nv);
        }
    }
};

} // namespace vfpns
