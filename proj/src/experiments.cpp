#include "vfpns/experiments.hpp"

#include <cmath>

#include "vfpns/boundary.hpp"
#include "vfpns/diagnostics.hpp"
#include "vfpns/errors.hpp"
#include "vfpns/moments.hpp"

namespace vfpns {

void run_simulation(SimState& s, const SchemeParams& prm, const Grid& g, long nsteps,
                    ThreadPool* pool, const StepCallback& cb) {
    for (long k = 0; k < nsteps; ++k) {
        const StepStats st = advance(s, prm, g, pool);
        if (cb) cb(s, st);
    }
}

SimState run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                        ThreadPool* pool) {
    const Grid g = build_grid(make_grid_spec(cfg));
    const SchemeParams prm = make_params(cfg, g);
    SimState s = build_initial_state(cfg, prm, g, pool);
    const long nsteps = resolved_steps(cfg);

    if (out_dir.empty()) {
        run_simulation(s, prm, g, nsteps, pool);
        return s;
    }

    RunWriter writer(out_dir, cfg, prm, g);
    writer.write_metadata();
    writer.append(collect_diagnostics(s, prm, g, StepStats{}, pool));
    writer.write_snapshot(s, prm, 0);
    run_simulation(s, prm, g, nsteps, pool, [&](const SimState& st, const StepStats& stats) {
        writer.append(collect_diagnostics(st, prm, g, stats, pool));
        if (cfg.snapshot_every > 0 &&
            (st.step % cfg.snapshot_every == 0 || st.step == nsteps))
            writer.write_snapshot(st, prm, st.step);
    });
    if (cfg.snapshot_every == 0 && nsteps > 0) writer.write_snapshot(s, prm, s.step);
    return s;
}

PairError pair_error(const ExperimentConfig& coarse_cfg, ThreadPool* pool) {
    ExperimentConfig fine_cfg = coarse_cfg;
    fine_cfg.nx = 2 * coarse_cfg.nx;
    if (coarse_cfg.steps >= 0) fine_cfg.steps = 2 * coarse_cfg.steps;

    const Grid gc = build_grid(make_grid_spec(coarse_cfg));
    const Grid gf = build_grid(make_grid_spec(fine_cfg));
    const SchemeParams pc = make_params(coarse_cfg, gc);
    const SchemeParams pf = make_params(fine_cfg, gf);
    SimState sc = build_initial_state(coarse_cfg, pc, gc, pool);
    SimState sf = build_initial_state(fine_cfg, pf, gf, pool);

    const long steps_c = resolved_steps(coarse_cfg);
    const int ns = pc.n_species;

    std::vector<double> norm_f0(ns);
    for (int i = 0; i < ns; ++i) norm_f0[i] = phase_l1(sc.species[i].f, gc);

    PairError out;
    out.e_f.assign(ns, 0.0);
    double max_du = 0.0;
    for (long k = 0; k < steps_c; ++k) {
        advance(sf, pf, gf, pool);
        advance(sf, pf, gf, pool);
        advance(sc, pc, gc, pool);
        for (int i = 0; i < ns; ++i) {
            const PhaseField down = coarsen_phase(sf.species[i].f, gf, gc);
            out.e_f[i] =
                std::max(out.e_f[i], phase_diff_l1(down, sc.species[i].f, gc) / norm_f0[i]);
        }
        const VecField2D du = coarsen_vec(sf.u, gf, gc);
        max_du = std::max(max_du, vec_diff_l2(du, sc.u, gc));
    }
    const double un = vec_l2(sc.u, gc);
    out.e_u = un > 0.0 ? max_du / un : max_du;
    return out;
}

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& base,
                                              const std::vector<int>& nx_list,
                                              const std::vector<double>& eps_list,
                                              ThreadPool* pool) {
    if (nx_list.size() < 2) throw ConfigError("convergence: need at least two grid sizes");
    for (size_t k = 1; k < nx_list.size(); ++k)
        if (nx_list[k] != 2 * nx_list[k - 1])
            throw ConfigError("convergence: nx list must double at each entry");

    std::vector<ConvergenceRow> rows;
    for (double eps : eps_list) {
        std::vector<PairError> pe;
        for (size_t k = 0; k + 1 < nx_list.size(); ++k) {
            ExperimentConfig cfg = base;
            cfg.eps = eps;
            cfg.nx = nx_list[k];
            pe.push_back(pair_error(cfg, pool));
        }
        const int ns = base.n_species;
        for (int i = 0; i <= ns; ++i) {
            ConvergenceRow row;
            row.eps = eps;
            row.field = (i < ns) ? "f" + std::to_string(i + 1) : "u";
            for (const PairError& e : pe)
                row.errors.push_back(i < ns ? e.e_f[i] : e.e_u);
            for (size_t k = 0; k + 1 < row.errors.size(); ++k)
                row.orders.push_back(convergence_order(row.errors[k], row.errors[k + 1]));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<ApSeriesPoint> ap_test(const ExperimentConfig& base,
                                   const std::vector<double>& eps_list, ThreadPool* pool) {
    std::vector<ApSeriesPoint> series;
    for (double eps : eps_list) {
        ExperimentConfig cfg = base;
        cfg.eps = eps;
        cfg.eps_profile = "constant";
        const Grid g = build_grid(make_grid_spec(cfg));
        const SchemeParams prm = make_params(cfg, g);
        SimState s = build_initial_state(cfg, prm, g, pool);

        auto record = [&](const SimState& st) {
            ApSeriesPoint pt;
            pt.eps = eps;
            pt.step = st.step;
            pt.time = st.time;
            for (size_t i = 0; i < st.species.size(); ++i) {
                const Field2D dens = density_moment(st.species[i].f, g, pool);
                pt.dist.push_back(maxwellian_distance(st.species[i].f, dens, st.u,
                                                      static_cast<int>(i) + 1, g, pool));
            }
            series.push_back(std::move(pt));
        };
        record(s);
        run_simulation(s, prm, g, resolved_steps(cfg), pool,
                       [&](const SimState& st, const StepStats&) { record(st); });
    }
    return series;
}

LimitState build_initial_limit_state(const ExperimentConfig& cfg, const SchemeParams& prm,
                                     const Grid& g, ThreadPool* pool) {
    SimState s = build_initial_state(cfg, prm, g, pool);
    LimitState ls(g.nx);
    std::vector<Field2D> ns;
    for (const auto& sp : s.species) ns.push_back(sp.n);
    ls.nu = composite_density(ns, g);
    // the limit system carries the mixture momentum: after the initial drag
    // layer the common velocity is (u + kappa sum_i J_i)/(1 + kappa nu)
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            double jx = 0.0, jy = 0.0;
            for (const auto& sp : s.species) {
                jx += sp.J.x(j, jp);
                jy += sp.J.y(j, jp);
            }
            const double rho = 1.0 + prm.kappa * ls.nu(j, jp);
            ls.u.x(j, jp) = (s.u.x(j, jp) + prm.kappa * jx) / rho;
            ls.u.y(j, jp) = (s.u.y(j, jp) + prm.kappa * jy) / rho;
        }
    fill_ghost_p_neumann(ls.nu);
    fill_ghost_u_noslip(ls.u);
    ls.p = Field2D(g.nx, 0.0);
    // freeze the composition fractions r_i = n_i/nu and the kinetic-pressure
    // weight sum_i r_i (material invariants under a common velocity)
    double snu = 0.0;
    std::vector<double> sn(s.species.size(), 0.0);
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            for (size_t i = 0; i < s.species.size(); ++i) sn[i] += s.species[i].n(j, jp);
            snu += ls.nu(j, jp);
        }
    ls.composition.assign(s.species.size(), 0.0);
    double tw = 0.0;
    for (size_t i = 0; i < s.species.size(); ++i) {
        ls.composition[i] = snu > 0.0 ? sn[i] / snu : (i == 0 ? 1.0 : 0.0);
        tw += ls.composition[i];
    }
    ls.thermal_weight = tw;
    return ls;
}

LimitCompareResult limit_compare(const ExperimentConfig& cfg, long nsteps, ThreadPool* pool) {
    const Grid g = build_grid(make_grid_spec(cfg));
    const SchemeParams prm = make_params(cfg, g);
    SimState full = build_initial_state(cfg, prm, g, pool);
    LimitState lim = build_initial_limit_state(cfg, prm, g, pool);
    for (long k = 0; k < nsteps; ++k) {
        advance(full, prm, g, pool);
        limit_step(lim, prm, g);
    }
    LimitCompareResult out;
    out.u_norm_limit = vec_l2(lim.u, g);
    const double diff = vec_diff_l2(full.u, lim.u, g);
    out.rel_l2_u = diff / std::max(out.u_norm_limit, 1e-300);
    return out;
}

} // namespace vfpns
