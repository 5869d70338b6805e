#include "vfpns/limit.hpp"

#include <cmath>

#include "vfpns/boundary.hpp"
#include "vfpns/errors.hpp"
#include "vfpns/fluid.hpp"
#include "vfpns/transport.hpp"

namespace vfpns {

namespace {

// Convection of the weighted momentum: component a of Div(rho u (x) u).
// rho carries even ghosts, u no-slip ghosts, so the ghost products are the
// plus-mirror of the interior ones.
VecField2D convection_weighted(const Field2D& rho, const VecField2D& u, const Grid& g) {
    const int nx = g.nx;
    VecField2D out(nx);
    const double h2 = 2.0 * g.dx;
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            auto m = [&](int a, int b) { return rho(a, b) * u.x(a, b); };
            auto my = [&](int a, int b) { return rho(a, b) * u.y(a, b); };
            out.x(j, jp) = (m(j + 1, jp) * u.x(j + 1, jp) - m(j - 1, jp) * u.x(j - 1, jp)) / h2 +
                           (my(j, jp + 1) * u.x(j, jp + 1) - my(j, jp - 1) * u.x(j, jp - 1)) / h2;
            out.y(j, jp) = (m(j + 1, jp) * u.y(j + 1, jp) - m(j - 1, jp) * u.y(j - 1, jp)) / h2 +
                           (my(j, jp + 1) * u.y(j, jp + 1) - my(j, jp - 1) * u.y(j, jp - 1)) / h2;
        }
    return out;
}

} // namespace

namespace {

// Split face speeds: A_plus + A_minus = u exactly; the positive part carries
// the half-space first moment of the composition-weighted Maxwellians.
void split_speeds(double u, const std::vector<double>& comp, double& a_plus, double& a_minus) {
    double ap = 0.0;
    for (size_t i = 0; i < comp.size(); ++i) {
        const double sz = static_cast<double>(i + 1);
        const double sigma = 1.0 / std::sqrt(sz);
        const double z = u / sigma;
        const double cdf = 0.5 * std::erfc(-z * M_SQRT1_2);
        const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
        ap += sz * comp[i] * (u * cdf + sigma * pdf);
    }
    a_plus = ap;
    a_minus = u - ap;
}

// One face of the split limited flux; cells (fm1, f0 | f1, f2).
inline double split_face_flux(double a_plus, double a_minus, double fm1, double f0, double f1,
                              double f2) {
    return a_plus * (f0 + 0.5 * vl_slope(f0 - fm1, f1 - f0)) +
           a_minus * (f1 - 0.5 * vl_slope(f1 - f0, f2 - f1));
}

} // namespace

Field2D nu_flux_divergence(const Field2D& nu, const VecField2D& u,
                           const std::vector<double>& composition, const Grid& g) {
    const int nx = g.nx;
    Field2D out(nx, 0.0);
    double ap, am;
    // x faces; wall fluxes vanish by specular pairing
    for (int jp = 1; jp <= nx; ++jp) {
        double fprev = 0.0;
        for (int c = 1; c <= nx; ++c) {
            double fcur;
            if (c == nx) {
                fcur = 0.0;
            } else {
                split_speeds(0.5 * (u.x(c, jp) + u.x(c + 1, jp)), composition, ap, am);
                fcur = split_face_flux(ap, am, nu(c - 1, jp), nu(c, jp), nu(c + 1, jp),
                                       nu(c + 2, jp));
            }
            out(c, jp) += (fcur - fprev) / g.dx;
            fprev = fcur;
        }
    }
    // y faces
    for (int j = 1; j <= nx; ++j) {
        double fprev = 0.0;
        for (int c = 1; c <= nx; ++c) {
            double fcur;
            if (c == nx) {
                fcur = 0.0;
            } else {
                split_speeds(0.5 * (u.y(j, c) + u.y(j, c + 1)), composition, ap, am);
                fcur = split_face_flux(ap, am, nu(j, c - 1), nu(j, c), nu(j, c + 1),
                                       nu(j, c + 2));
            }
            out(j, c) += (fcur - fprev) / g.dx;
            fprev = fcur;
        }
    }
    return out;
}

LimitStepStats limit_step_first_order(LimitState& s, const SchemeParams& prm, const Grid& g) {
    const int nx = g.nx;
    const double dt = prm.dt;
    const double kap = prm.kappa;
    const double kth = kap * s.thermal_weight;  // kinetic-pressure gradient weight
    LimitStepStats stats;

    // density advection
    const Field2D dflux = nu_flux_divergence(s.nu, s.u, s.composition, g);
    Field2D nu_new(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            nu_new(j, jp) = s.nu(j, jp) - dt * dflux(j, jp);
    fill_ghost_p_neumann(nu_new);

    // momentum: ((1+kappa nu^{k+1})/dt - (1/Re) Lap) u* = rhs
    Field2D react(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            react(j, jp) = (1.0 + kap * nu_new(j, jp)) / dt;

    Field2D rho_k(nx);
    for (int jp = 0; jp <= nx + 1; ++jp)
        for (int j = 0; j <= nx + 1; ++j)
            rho_k(j, jp) = 1.0 + kap * s.nu(j, jp);
    const VecField2D conv = convection_weighted(rho_k, s.u, g);
    const VecField2D gnu = centered_gradient_raw(s.nu, g);
    const bool gravity = prm.gravity != 0.0;
    VecField2D gphi;
    if (gravity) gphi = centered_gradient_raw(prm.phi, g);

    VecField2D rhs(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            rhs.x(j, jp) = rho_k(j, jp) * s.u.x(j, jp) / dt - conv.x(j, jp) - kth * gnu.x(j, jp);
            rhs.y(j, jp) = rho_k(j, jp) * s.u.y(j, jp) / dt - conv.y(j, jp) - kth * gnu.y(j, jp);
            if (gravity) {
                rhs.x(j, jp) -= kap * s.nu(j, jp) * gphi.x(j, jp);
                rhs.y(j, jp) -= kap * s.nu(j, jp) * gphi.y(j, jp);
            }
        }

    VecField2D u_star(nx);
    const CgStats hx = helmholtz_solve(react, prm.re, rhs.x, g, prm.solver, u_star.x);
    const CgStats hy = helmholtz_solve(react, prm.re, rhs.y, g, prm.solver, u_star.y);
    stats.cg_helmholtz = hx.iters + hy.iters;
    fill_ghost_u_noslip(u_star);

    // projection with density 1 + kappa nu^{k+1}
    Field2D rho_new(nx);
    for (int jp = 0; jp <= nx + 1; ++jp)
        for (int j = 0; j <= nx + 1; ++j)
            rho_new(j, jp) = 1.0 + kap * nu_new(j, jp);
    Field2D rhs_p = divergence_noslip(u_star, g);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            rhs_p(j, jp) /= dt;
    Field2D q(nx);
    const CgStats ps = poisson_var_solve(rho_new, rhs_p, dt, g, prm.solver, q);
    stats.cg_poisson = ps.iters;

    const VecField2D gq = gradient_neumann(q, g);
    VecField2D u_new(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            u_new.x(j, jp) = u_star.x(j, jp) - dt * gq.x(j, jp) / rho_new(j, jp);
            u_new.y(j, jp) = u_star.y(j, jp) - dt * gq.y(j, jp) / rho_new(j, jp);
        }
    fill_ghost_u_noslip(u_new);

    const Field2D div = divergence_noslip(u_new, g);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            stats.div_inf = std::max(stats.div_inf, std::abs(div(j, jp)));

    // rotate history
    s.nu_prev = s.nu;
    s.u_prev = s.u;
    s.p_prev = s.p;
    s.has_prev = true;
    s.nu = std::move(nu_new);
    s.u = std::move(u_new);
    s.p = std::move(q);
    fill_ghost_p_neumann(s.p);
    ++s.step;
    s.time += dt;
    return stats;
}

LimitStepStats limit_step_second_order(LimitState& s, const SchemeParams& prm, const Grid& g) {
    if (!s.has_prev) throw SolverError("limit bdf2 step invoked without history");
    const int nx = g.nx;
    const double dt = prm.dt;
    const double kap = prm.kappa;
    const double kth = kap * s.thermal_weight;
    LimitStepStats stats;

    // density: BDF2 with extrapolated flux divergence
    const Field2D dflux_k = nu_flux_divergence(s.nu, s.u, s.composition, g);
    const Field2D dflux_m = nu_flux_divergence(s.nu_prev, s.u_prev, s.composition, g);
    Field2D nu_new(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            nu_new(j, jp) = (4.0 * s.nu(j, jp) - s.nu_prev(j, jp) -
                             2.0 * dt * (2.0 * dflux_k(j, jp) - dflux_m(j, jp))) /
                            3.0;
    fill_ghost_p_neumann(nu_new);

    Field2D react(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            react(j, jp) = 3.0 * (1.0 + kap * nu_new(j, jp)) / (2.0 * dt);

    Field2D rho_k(nx), rho_m(nx), nu_dag(nx);
    for (int jp = 0; jp <= nx + 1; ++jp)
        for (int j = 0; j <= nx + 1; ++j) {
            rho_k(j, jp) = 1.0 + kap * s.nu(j, jp);
            rho_m(j, jp) = 1.0 + kap * s.nu_prev(j, jp);
            nu_dag(j, jp) = 2.0 * s.nu(j, jp) - s.nu_prev(j, jp);
        }
    const VecField2D conv_k = convection_weighted(rho_k, s.u, g);
    const VecField2D conv_m = convection_weighted(rho_m, s.u_prev, g);
    const VecField2D gnu = centered_gradient_raw(nu_dag, g);
    const VecField2D gp = gradient_neumann(s.p, g);
    const bool gravity = prm.gravity != 0.0;
    VecField2D gphi;
    if (gravity) gphi = centered_gradient_raw(prm.phi, g);

    VecField2D rhs(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            rhs.x(j, jp) = (4.0 * rho_k(j, jp) * s.u.x(j, jp) - rho_m(j, jp) * s.u_prev.x(j, jp)) /
                               (2.0 * dt) -
                           (2.0 * conv_k.x(j, jp) - conv_m.x(j, jp)) - kth * gnu.x(j, jp) -
                           gp.x(j, jp);
            rhs.y(j, jp) = (4.0 * rho_k(j, jp) * s.u.y(j, jp) - rho_m(j, jp) * s.u_prev.y(j, jp)) /
                               (2.0 * dt) -
                           (2.0 * conv_k.y(j, jp) - conv_m.y(j, jp)) - kth * gnu.y(j, jp) -
                           gp.y(j, jp);
            if (gravity) {
                rhs.x(j, jp) -= kap * nu_dag(j, jp) * gphi.x(j, jp);
                rhs.y(j, jp) -= kap * nu_dag(j, jp) * gphi.y(j, jp);
            }
        }

    VecField2D u_star(nx);
    const CgStats hx = helmholtz_solve(react, prm.re, rhs.x, g, prm.solver, u_star.x);
    const CgStats hy = helmholtz_solve(react, prm.re, rhs.y, g, prm.solver, u_star.y);
    stats.cg_helmholtz = hx.iters + hy.iters;
    fill_ghost_u_noslip(u_star);

    Field2D rho_new(nx);
    for (int jp = 0; jp <= nx + 1; ++jp)
        for (int j = 0; j <= nx + 1; ++j)
            rho_new(j, jp) = 1.0 + kap * nu_new(j, jp);
    const double dt_eff = 2.0 * dt / 3.0;
    Field2D rhs_p = divergence_noslip(u_star, g);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            rhs_p(j, jp) /= dt_eff;
    Field2D q(nx);
    const CgStats ps = poisson_var_solve(rho_new, rhs_p, dt_eff, g, prm.solver, q);
    stats.cg_poisson = ps.iters;

    const VecField2D gq = gradient_neumann(q, g);
    VecField2D u_new(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            u_new.x(j, jp) = u_star.x(j, jp) - dt_eff * gq.x(j, jp) / rho_new(j, jp);
            u_new.y(j, jp) = u_star.y(j, jp) - dt_eff * gq.y(j, jp) / rho_new(j, jp);
        }
    fill_ghost_u_noslip(u_new);

    const Field2D div = divergence_noslip(u_new, g);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            stats.div_inf = std::max(stats.div_inf, std::abs(div(j, jp)));

    Field2D p_new(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            p_new(j, jp) = s.p(j, jp) + q(j, jp);
    fill_ghost_p_neumann(p_new);

    s.nu_prev = std::move(s.nu);
    s.u_prev = std::move(s.u);
    s.p_prev = std::move(s.p);
    s.nu = std::move(nu_new);
    s.u = std::move(u_new);
    s.p = std::move(p_new);
    ++s.step;
    s.time += dt;
    return stats;
}

LimitStepStats limit_step(LimitState& s, const SchemeParams& prm, const Grid& g) {
    if (prm.order == 1 || !s.has_prev) return limit_step_first_order(s, prm, g);
    return limit_step_second_order(s, prm, g);
}

} // namespace vfpns
