#include "vfpns/output.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "vfpns/config.hpp"
#include "vfpns/errors.hpp"
#include "vfpns/moments.hpp"

#ifndef VFPNS_VERSION
#define VFPNS_VERSION "unknown"
#endif

namespace vfpns {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

DiagRow collect_diagnostics(const SimState& s, const SchemeParams& prm, const Grid& g,
                            const StepStats& st, ThreadPool* pool) {
    DiagRow row;
    row.step = s.step;
    row.time = s.time;
    for (size_t i = 0; i < s.species.size(); ++i) {
        row.mass.push_back(species_mass(s.species[i].f, g, pool));
        const Field2D dens = density_moment(s.species[i].f, g, pool);
        row.maxw_dist.push_back(
            maxwellian_distance(s.species[i].f, dens, s.u, static_cast<int>(i) + 1, g, pool));
    }
    row.energy = energy_entropy(s, prm, g, pool).functional;
    row.div_inf = st.div_inf;
    row.cg_helmholtz = st.cg_helmholtz;
    row.cg_poisson = st.cg_poisson;
    row.cg_fp_max = st.cg_fp_max;
    row.n_gap_inf = st.n_gap_inf;
    row.min_f = st.min_f;
    row.checkerboard = st.checkerboard;
    return row;
}

RunWriter::RunWriter(std::string dir, const ExperimentConfig& cfg, const SchemeParams& prm,
                     const Grid& g)
    : dir_(std::move(dir)), cfg_(cfg), grid_(g), dt_(prm.dt) {
    std::error_code ec;
    std::filesystem::create_directories(dir_ + "/snapshots", ec);
    if (ec) throw SolverError("output: cannot create directory '" + dir_ + "': " + ec.message());
    csv_.open(dir_ + "/diagnostics.csv");
    if (!csv_) throw SolverError("output: cannot open '" + dir_ + "/diagnostics.csv'");
    csv_ << "step,time";
    for (int i = 1; i <= cfg_.n_species; ++i) csv_ << ",mass_" << i;
    for (int i = 1; i <= cfg_.n_species; ++i) csv_ << ",maxw_dist_" << i;
    csv_ << ",energy,div_inf,cg_helmholtz,cg_poisson,cg_fp_max,n_gap_inf,min_f,checkerboard\n";
}

void RunWriter::write_metadata() {
    const std::string path = dir_ + "/metadata.txt";
    std::ofstream out(path);
    if (!out) throw SolverError("output: cannot open '" + path + "'");
    out << "# run metadata; this file is a valid --config input\n";
    out << config_to_string(cfg_);
    out << "# version = " << VFPNS_VERSION << "\n";
    out << "# dt = " << fmt17(dt_) << "\n";
    out << "# dx = " << fmt17(grid_.dx) << "\n";
    out << "# dv = " << fmt17(grid_.dv) << "\n";
    out << "# alpha_policy = " << (cfg_.order == 1 ? "0.5" : "min(0.5,dt)") << "\n";
    out << "# limiter = van_leer\n";
    SolverOptions def;
    out << "# tol_cg_fp = " << fmt17(def.tol_cg_fp) << "\n";
    out << "# tol_pcg_fluid = " << fmt17(def.tol_pcg_fluid) << "\n";
    out << "# tol_div = " << fmt17(def.tol_div) << "\n";
}

void RunWriter::append(const DiagRow& row) {
    csv_ << row.step << "," << fmt17(row.time);
    for (double m : row.mass) csv_ << "," << fmt17(m);
    for (double d : row.maxw_dist) csv_ << "," << fmt17(d);
    csv_ << "," << fmt17(row.energy) << "," << fmt17(row.div_inf) << "," << row.cg_helmholtz
         << "," << row.cg_poisson << "," << row.cg_fp_max << "," << fmt17(row.n_gap_inf) << ","
         << fmt17(row.min_f) << "," << fmt17(row.checkerboard) << "\n";
    csv_.flush();
}

void RunWriter::write_snapshot(const SimState& s, const SchemeParams& prm, int step) {
    const std::string base = dir_ + "/snapshots/step_" + std::to_string(step) + "_";
    std::vector<Field2D> ns;
    for (size_t i = 0; i < s.species.size(); ++i) {
        write_field_txt(base + "n" + std::to_string(i + 1) + ".txt",
                        "n_" + std::to_string(i + 1), s.species[i].n, grid_, s.time);
        ns.push_back(s.species[i].n);
    }
    write_field_txt(base + "ux.txt", "u_x", s.u.x, grid_, s.time);
    write_field_txt(base + "uy.txt", "u_y", s.u.y, grid_, s.time);
    write_field_txt(base + "p.txt", "p", s.p, grid_, s.time);
    write_field_txt(base + "nu.txt", "nu", composite_density(ns, grid_), grid_, s.time);
    write_field_txt(base + "psi.txt", "psi", streamfunction(s.u, grid_), grid_, s.time);
    if (step == 0)  // the Stokes-number field is static
        write_field_txt(base + "eps.txt", "eps", prm.eps, grid_, s.time);
}

Field2D streamfunction(const VecField2D& u, const Grid& g) {
    Field2D psi(g.nx, 0.0);
    for (int j = 1; j <= g.nx; ++j) {
        double acc = 0.0;
        double prev = 0.0;  // u1 = 0 on the bottom wall
        for (int jp = 1; jp <= g.nx; ++jp) {
            const double cur = u.x(j, jp);
            acc += 0.5 * (prev + cur) * g.dx;
            psi(j, jp) = acc;
            prev = cur;
        }
    }
    return psi;
}

void write_field_txt(const std::string& path, const std::string& name, const Field2D& a,
                     const Grid& g, double time) {
    std::ofstream out(path);
    if (!out) throw SolverError("output: cannot open '" + path + "'");
    out << "# structured field snapshot\n";
    out << "# field " << name << "\n";
    out << "# nx " << g.nx << "\n";
    out << "# dx " << fmt17(g.dx) << "\n";
    out << "# time " << fmt17(time) << "\n";
    for (int jp = 1; jp <= g.nx; ++jp) {
        for (int j = 1; j <= g.nx; ++j) {
            if (j > 1) out << " ";
            out << fmt17(a(j, jp));
        }
        out << "\n";
    }
}

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header) {
    std::ifstream in(path);
    if (!in) throw SolverError("cannot open csv '" + path + "'");
    std::string line;
    std::vector<std::vector<double>> rows;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        if (first) {
            first = false;
            if (header) {
                while (std::getline(ss, tok, ',')) header->push_back(tok);
            }
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace vfpns
