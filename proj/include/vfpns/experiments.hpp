#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vfpns/integrator.hpp"
#include "vfpns/limit.hpp"
#include "vfpns/output.hpp"
#include "vfpns/presets.hpp"

namespace vfpns {

using StepCallback = std::function<void(const SimState&, const StepStats&)>;

/// Advances nsteps (BDF2 bootstrapped by one first-order step when needed).
void run_simulation(SimState& s, const SchemeParams& prm, const Grid& g, long nsteps,
                    ThreadPool* pool, const StepCallback& cb = {});

/// Full preset run; writes metadata/diagnostics/snapshots when out_dir is
/// nonempty. Returns the final state.
SimState run_experiment(const ExperimentConfig& cfg, const std::string& out_dir, ThreadPool* pool);

/// Relative errors between a run at cfg and the same run with nx doubled,
/// advanced in lockstep and compared after every coarse step on the coarse
/// grid: distributions in l1 (normalized by the coarse initial norm), fluid
/// velocity in l2 (normalized by the coarse final-time norm).
struct PairError {
    std::vector<double> e_f;  // per species
    double e_u = 0.0;
};
PairError pair_error(const ExperimentConfig& coarse_cfg, ThreadPool* pool);

/// Convergence table over nx_list (each entry twice the previous) and
/// eps_list: per (eps, field) the pair errors and observed orders.
struct ConvergenceRow {
    double eps = 0.0;
    std::string field;            // "f1", "f2", ..., "u"
    std::vector<double> errors;   // one per grid pair, finest last
    std::vector<double> orders;   // log2 ratios of consecutive errors
};
std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& base,
                                              const std::vector<int>& nx_list,
                                              const std::vector<double>& eps_list,
                                              ThreadPool* pool);

/// Maxwellian-distance time series across a list of (constant) eps values.
struct ApSeriesPoint {
    double eps = 0.0;
    long step = 0;
    double time = 0.0;
    std::vector<double> dist;  // per species
};
std::vector<ApSeriesPoint> ap_test(const ExperimentConfig& base,
                                   const std::vector<double>& eps_list, ThreadPool* pool);

/// Limit-system state derived from a preset: nu = sum_i i n_i(0), same u.
LimitState build_initial_limit_state(const ExperimentConfig& cfg, const SchemeParams& prm,
                                     const Grid& g, ThreadPool* pool);

/// Twin run of the full solver against the limit solver from the same
/// preset data; returns the relative l2 difference of the fluid velocities
/// after nsteps.
struct LimitCompareResult {
    double rel_l2_u = 0.0;
    double u_norm_limit = 0.0;
};
LimitCompareResult limit_compare(const ExperimentConfig& cfg, long nsteps, ThreadPool* pool);

} // namespace vfpns
