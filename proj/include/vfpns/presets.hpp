#pragma once

#include <string>

#include "vfpns/grid.hpp"
#include "vfpns/parallel.hpp"
#include "vfpns/params.hpp"
#include "vfpns/state.hpp"

namespace vfpns {

enum class Preset { accuracy, volcano, dam, injection };

Preset preset_from_name(const std::string& name);  // throws ConfigError
std::string preset_name(Preset p);

/// Initial-data formulas at a point of the unit square.
double preset_density(Preset p, double x, double y);
void preset_particle_velocity(Preset p, double x, double y, double& upx, double& upy);
void preset_fluid_velocity(Preset p, double x, double y, double& ux, double& uy);

/// Fully resolved run configuration; the flat key=value config schema
/// mirrors these fields one to one.
struct ExperimentConfig {
    std::string preset = "volcano";
    int nx = 128;
    int nv = 32;
    double vmax = 8.0;
    int order = 2;
    double eps = 1.0;                     // constant value, or eps0 for the ex30 profile
    std::string eps_profile = "constant"; // "constant" | "ex30"
    double re = 1.0;
    double kappa = 2.0;
    double gravity = 0.0;
    int n_species = 2;
    double tmax = -1.0;  // used when steps < 0
    long steps = -1;     // authoritative when >= 0
    int snapshot_every = 0;  // 0: initial snapshot only
    int threads = 1;
    bool fp_jacobi = false;
    bool clip_negative_f = false;
};

/// Preset defaults: grid, Reynolds number, gravity, eps handling, end time.
ExperimentConfig default_config(Preset p);

/// Number of steps a config runs (steps if set, else round(tmax/dt)).
long resolved_steps(const ExperimentConfig& cfg);

GridSpec make_grid_spec(const ExperimentConfig& cfg);
SchemeParams make_params(const ExperimentConfig& cfg, const Grid& g);

/// Samples the preset data at cell centers, builds f_i(0) = n_i M_{u_p,i},
/// fills all ghosts and stores the recomputed moments.
SimState build_initial_state(const ExperimentConfig& cfg, const SchemeParams& prm, const Grid& g,
                             ThreadPool* pool);

} // namespace vfpns
