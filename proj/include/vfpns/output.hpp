#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "vfpns/diagnostics.hpp"
#include "vfpns/integrator.hpp"
#include "vfpns/presets.hpp"

namespace vfpns {

/// One diagnostics CSV row; decimal with 17 significant digits so the file
/// round-trips doubles bit-exactly.
struct DiagRow {
    long step = 0;
    double time = 0.0;
    std::vector<double> mass;       // per species
    std::vector<double> maxw_dist;  // per species
    double energy = 0.0;
    double div_inf = 0.0;
    int cg_helmholtz = 0;
    int cg_poisson = 0;
    int cg_fp_max = 0;
    double n_gap_inf = 0.0;
    double min_f = 0.0;
    double checkerboard = 0.0;
};

DiagRow collect_diagnostics(const SimState& s, const SchemeParams& prm, const Grid& g,
                            const StepStats& st, ThreadPool* pool);

/// Writes run artifacts under an output directory:
///   metadata.txt            resolved config (valid --config input) + info comments
///   diagnostics.csv         one row per step
///   snapshots/step_K_*.txt  plain-text structured fields
class RunWriter {
public:
    RunWriter(std::string dir, const ExperimentConfig& cfg, const SchemeParams& prm,
              const Grid& g);

    void write_metadata();
    void append(const DiagRow& row);
    void write_snapshot(const SimState& s, const SchemeParams& prm, int step);

    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    ExperimentConfig cfg_;
    const Grid& grid_;
    double dt_ = 0.0;
    std::ofstream csv_;
};

/// Streamfunction with psi = 0 on the bottom wall, psi_y = u1 by cumulative
/// trapezoid integration along columns (plot-ready, not a solver quantity).
Field2D streamfunction(const VecField2D& u, const Grid& g);

/// Single structured field file with a self-describing header.
void write_field_txt(const std::string& path, const std::string& name, const Field2D& a,
                     const Grid& g, double time);

/// Parses a diagnostics CSV back (testing the round-trip contract).
std::vector<std::vector<double>> read_csv(const std::string& path, std::vector<std::string>* header);

} // namespace vfpns
