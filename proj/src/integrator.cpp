#include "vfpns/integrator.hpp"

#include <cmath>
#include <vector>

#include "vfpns/boundary.hpp"
#include "vfpns/errors.hpp"
#include "vfpns/fluid.hpp"
#include "vfpns/fokker_planck.hpp"
#include "vfpns/moments.hpp"
#include "vfpns/transport.hpp"

namespace vfpns {

namespace {

void fill_f_ghosts(PhaseField& f, int species_index, const SchemeParams& prm, const Grid& g) {
    fill_ghost_f_specular(f);
    if (prm.injection) apply_injection(f, species_index, g);
}

StepStats step_impl(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool,
                    bool bdf2) {
    const int nx = g.nx;
    const int ns = prm.n_species;
    const double dt = prm.dt;
    if (dt * g.vmax > g.dx * (1.0 + 1e-12))
        throw SolverError("cfl violation: dt*vmax exceeds dx");
    if (bdf2 && !s.has_prev)
        throw SolverError("bdf2 step requires two time levels; run the bootstrap step first");

    StepStats stats;
    const bool gravity = prm.gravity != 0.0;
    VecField2D grad_phi;
    if (gravity) grad_phi = centered_gradient_raw(prm.phi, g);

    // Step 1 + kinetic right-hand sides. For BDF2 the transported field is the
    // extrapolation 2f^k - f^{k-1}; its ghost ring combines the filled levels.
    std::vector<PhaseField> rhs;
    std::vector<Field2D> n_new(ns);
    std::vector<MomentSet> stress_dag(ns);
    rhs.reserve(ns);
    PhaseField f_dag_buf;
    if (bdf2) f_dag_buf = PhaseField(nx, g.nv);
    for (int i = 0; i < ns; ++i) {
        const SpeciesState& sp = s.species[i];
        const PhaseField* f_dag = &sp.f;
        if (bdf2) {
            phase_lincomb(2.0, sp.f, -1.0, s.species_prev[i].f, f_dag_buf);
            f_dag = &f_dag_buf;
        }

        PhaseField transport(nx, g.nv);
        advect_x(*f_dag, g, pool, transport);

        // density update from the transport moment
        Field2D nmom(nx);
        {
            const long ncells = static_cast<long>(nx) * nx;
            auto body = [&](long b, long e) {
                for (long c = b; c < e; ++c) {
                    const int j = static_cast<int>(c % nx) + 1;
                    const int jp = static_cast<int>(c / nx) + 1;
                    nmom(j, jp) = moments_cell(transport.block(j, jp), g).n;
                }
            };
            if (pool)
                pool->parallel_for(ncells, default_chunk(ncells), body);
            else
                body(0, ncells);
        }
        n_new[i] = Field2D(nx);
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j)
                n_new[i](j, jp) = bdf2 ? (4.0 * sp.n(j, jp) - s.species_prev[i].n(j, jp) -
                                          2.0 * dt * nmom(j, jp)) /
                                             3.0
                                       : sp.n(j, jp) - dt * nmom(j, jp);
        fill_ghost_p_neumann(n_new[i]);

        stress_dag[i] = compute_moments(*f_dag, g, i + 1, pool);

        // rhs = f^k - dt*T + dt*acc          (first order)
        //     = 4f^k - f^{k-1} - 2dt*T + 2dt*acc  (BDF2)
        PhaseField r(nx, g.nv);
        if (bdf2)
            phase_lincomb(4.0, sp.f, -1.0, s.species_prev[i].f, r);
        else
            phase_lincomb(1.0, sp.f, 0.0, sp.f, r);
        phase_axpy(bdf2 ? -2.0 * dt : -dt, transport, r);
        if (gravity) accel_v(*f_dag, g, grad_phi, pool, bdf2 ? 2.0 * dt : dt, r);
        rhs.push_back(std::move(r));
    }

    // Steps 2-3: fluid update
    FluidStepInput fin;
    fin.u_k = &s.u;
    fin.u_km1 = bdf2 ? &s.u_prev : nullptr;
    fin.p_k = bdf2 ? &s.p : nullptr;
    fin.grad_phi = gravity ? &grad_phi : nullptr;
    std::vector<Field2D> n_dag_store;
    n_dag_store.reserve(ns);
    for (int i = 0; i < ns; ++i) {
        fin.J_k.push_back(&s.species[i].J);
        if (bdf2) fin.J_km1.push_back(&s.species_prev[i].J);
        if (bdf2) {
            Field2D nd(nx);
            for (int jp = 0; jp <= nx + 1; ++jp)
                for (int j = 0; j <= nx + 1; ++j)
                    nd(j, jp) = 2.0 * s.species[i].n(j, jp) - s.species_prev[i].n(j, jp);
            n_dag_store.push_back(std::move(nd));
        } else {
            n_dag_store.push_back(s.species[i].n);
        }
        fin.stress_dag.push_back(&stress_dag[i]);
        fin.n_new.push_back(&n_new[i]);
    }
    for (int i = 0; i < ns; ++i) fin.n_dag.push_back(&n_dag_store[i]);

    PressurelessResult pl = pressureless_step(fin, prm, g);
    stats.cg_helmholtz = pl.cg_iters;

    ProjectionResult pj =
        projection_step(pl.u_star, pl.j_star, fin.n_new, s.p, prm, g);
    stats.cg_poisson = pj.cg_iters;
    stats.checkerboard = pj.checkerboard;

    const Field2D div = divergence_noslip(pj.u_new, g);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            stats.div_inf = std::max(stats.div_inf, std::abs(div(j, jp)));

    // Step 4: implicit kinetic solve against u^{k+1}, then moment refresh
    stats.min_f = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ns; ++i) {
        PhaseField f_new = std::move(s.species_prev[i].f);
        if (f_new.nx() != nx) f_new = PhaseField(nx, g.nv);
        const FpStats fs = solve_fp(rhs[i], pj.u_new, prm.eps, i + 1, dt, bdf2 ? 2 : 1, g,
                                    prm.solver, pool, f_new);
        stats.cg_fp_total += fs.total_iters;
        stats.cg_fp_max = std::max(stats.cg_fp_max, fs.max_iters);
        stats.min_f = std::min(stats.min_f, fs.min_f);

        fill_f_ghosts(f_new, i, prm, g);
        const MomentSet mom = compute_moments(f_new, g, i + 1, pool);
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j)
                stats.n_gap_inf =
                    std::max(stats.n_gap_inf, std::abs(n_new[i](j, jp) - mom.n(j, jp)));

        // rotate the species history
        s.species_prev[i].f = std::move(s.species[i].f);
        s.species_prev[i].n = std::move(s.species[i].n);
        s.species_prev[i].J = std::move(s.species[i].J);
        s.species[i].f = std::move(f_new);
        s.species[i].n = std::move(n_new[i]);
        s.species[i].J = mom.J;
    }
    s.u_prev = std::move(s.u);
    s.p_prev = std::move(s.p);
    s.u = std::move(pj.u_new);
    s.p = std::move(pj.p_new);
    s.has_prev = true;
    ++s.step;
    s.time += dt;

    // sanity guard: a diverged solve shows up as non-finite velocity
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            if (!std::isfinite(s.u.x(j, jp)) || !std::isfinite(s.u.y(j, jp)))
                throw SolverError("non-finite fluid velocity after step " +
                                  std::to_string(s.step));
    return stats;
}

} // namespace

StepStats step_first_order(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool) {
    SchemeParams p1 = prm;
    p1.order = 1;
    return step_impl(s, p1, g, pool, false);
}

StepStats step_second_order(SimState& s, const SchemeParams& prm, const Grid& g,
                            ThreadPool* pool) {
    SchemeParams p2 = prm;
    p2.order = 2;
    return step_impl(s, p2, g, pool, true);
}

StepStats bootstrap_step(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool) {
    return step_first_order(s, prm, g, pool);
}

StepStats advance(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool) {
    if (prm.order == 1) return step_first_order(s, prm, g, pool);
    if (!s.has_prev) return bootstrap_step(s, prm, g, pool);
    return step_second_order(s, prm, g, pool);
}

void refresh_state(SimState& s, const SchemeParams& prm, const Grid& g, ThreadPool* pool) {
    fill_ghost_u_noslip(s.u);
    fill_ghost_p_neumann(s.p);
    for (int i = 0; i < prm.n_species; ++i) {
        SpeciesState& sp = s.species[i];
        fill_f_ghosts(sp.f, i, prm, g);
        const MomentSet mom = compute_moments(sp.f, g, i + 1, pool);
        sp.n = mom.n;
        sp.J = mom.J;
    }
}

} // namespace vfpns
