#include "vfpns/fluid.hpp"

#include <cmath>
#include <sstream>

#include "vfpns/boundary.hpp"
#include "vfpns/errors.hpp"

namespace vfpns {

namespace {

inline double mirror_minus(const Field2D& a, int j, int jp, int nx) {
    // value of a no-slip field at (j,jp) allowing one ghost index
    if (j == 0) return -a(1, jp);
    if (j == nx + 1) return -a(nx, jp);
    if (jp == 0) return -a(j, 1);
    if (jp == nx + 1) return -a(j, nx);
    return a(j, jp);
}

inline double mirror_plus(const Field2D& a, int j, int jp, int nx) {
    if (j == 0) return a(1, jp);
    if (j == nx + 1) return a(nx, jp);
    if (jp == 0) return a(j, 1);
    if (jp == nx + 1) return a(j, nx);
    return a(j, jp);
}

double interior_mean(const Field2D& a, int nx) {
    double s = 0.0;
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            s += a(j, jp);
    return s / (static_cast<double>(nx) * nx);
}

double interior_linf(const Field2D& a, int nx) {
    double s = 0.0;
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            s = std::max(s, std::abs(a(j, jp)));
    return s;
}

} // namespace

Field2D divergence_noslip(const VecField2D& w, const Grid& g) {
    const int nx = g.nx;
    Field2D out(nx);
    const double h2 = 2.0 * g.dx;
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            out(j, jp) = (mirror_minus(w.x, j + 1, jp, nx) - mirror_minus(w.x, j - 1, jp, nx)) / h2 +
                         (mirror_minus(w.y, j, jp + 1, nx) - mirror_minus(w.y, j, jp - 1, nx)) / h2;
    return out;
}

VecField2D gradient_neumann(const Field2D& q, const Grid& g) {
    const int nx = g.nx;
    VecField2D out(nx);
    const double h2 = 2.0 * g.dx;
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            out.x(j, jp) = (mirror_plus(q, j + 1, jp, nx) - mirror_plus(q, j - 1, jp, nx)) / h2;
            out.y(j, jp) = (mirror_plus(q, j, jp + 1, nx) - mirror_plus(q, j, jp - 1, nx)) / h2;
        }
    return out;
}

Field2D laplacian_noslip(const Field2D& a, const Grid& g) {
    const int nx = g.nx;
    Field2D out(nx);
    const double ih2 = 1.0 / (g.dx * g.dx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            const double c = a(j, jp);
            double s = mirror_minus(a, j - 1, jp, nx) + mirror_minus(a, j + 1, jp, nx) +
                       mirror_minus(a, j, jp - 1, nx) + mirror_minus(a, j, jp + 1, nx);
            out(j, jp) = (s - 4.0 * c) * ih2;
        }
    return out;
}

VecField2D convection(const VecField2D& u, const Grid& g) {
    const int nx = g.nx;
    VecField2D out(nx);
    const double h2 = 2.0 * g.dx;
    // products carry the stored (no-slip) ghosts of u
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            const double uxe = u.x(j + 1, jp), uxw = u.x(j - 1, jp);
            const double uxn = u.x(j, jp + 1), uxs = u.x(j, jp - 1);
            const double uye = u.y(j + 1, jp), uyw = u.y(j - 1, jp);
            const double uyn = u.y(j, jp + 1), uys = u.y(j, jp - 1);
            out.x(j, jp) = (uxe * uxe - uxw * uxw) / h2 + (uyn * uxn - uys * uxs) / h2;
            out.y(j, jp) = (uxe * uye - uxw * uyw) / h2 + (uyn * uyn - uys * uys) / h2;
        }
    return out;
}

VecField2D stress_divergence(const MomentSet& mom, const Grid& g) {
    const int nx = g.nx;
    VecField2D out(nx);
    const double h2 = 2.0 * g.dx;
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            out.x(j, jp) = (mom.pxx(j + 1, jp) - mom.pxx(j - 1, jp)) / h2 +
                           (mom.pxy(j, jp + 1) - mom.pxy(j, jp - 1)) / h2;
            out.y(j, jp) = (mom.pxy(j + 1, jp) - mom.pxy(j - 1, jp)) / h2 +
                           (mom.pyy(j, jp + 1) - mom.pyy(j, jp - 1)) / h2;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Krylov solves on interior-only vectors, index c = (j-1) + nx*(jp-1).

namespace {

void helmholtz_apply(const std::vector<double>& x, const Field2D& react, double inv_re, int nx,
                     double ih2, std::vector<double>& y) {
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            const size_t c = static_cast<size_t>(j - 1) + static_cast<size_t>(nx) * (jp - 1);
            const double xc = x[c];
            double s = 0.0;
            s += (j > 1) ? x[c - 1] : -xc;
            s += (j < nx) ? x[c + 1] : -xc;
            s += (jp > 1) ? x[c - nx] : -xc;
            s += (jp < nx) ? x[c + nx] : -xc;
            y[c] = react(j, jp) * xc - inv_re * (s - 4.0 * xc) * ih2;
        }
}

} // namespace

CgStats helmholtz_solve(const Field2D& react, double re, const Field2D& rhs, const Grid& g,
                        const SolverOptions& opt, Field2D& out) {
    const int nx = g.nx;
    const size_t n = static_cast<size_t>(nx) * nx;
    const double ih2 = 1.0 / (g.dx * g.dx);
    const double inv_re = 1.0 / re;

    std::vector<double> x(n, 0.0), r(n), z(n), p(n), ap(n), diag(n);
    double bnorm2 = 0.0;
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            const size_t c = static_cast<size_t>(j - 1) + static_cast<size_t>(nx) * (jp - 1);
            const double rc = react(j, jp);
            if (!(rc > 0.0))
                throw SolverError("helmholtz: nonpositive reaction coefficient at cell (" +
                                  std::to_string(j) + "," + std::to_string(jp) + ")");
            const int nwalls = (j == 1) + (j == nx) + (jp == 1) + (jp == nx);
            diag[c] = rc + inv_re * (4.0 + nwalls) * ih2;
            r[c] = rhs(j, jp);
            bnorm2 += r[c] * r[c];
        }
    const double bnorm = std::sqrt(bnorm2);
    CgStats st;
    if (bnorm == 0.0) {
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j)
                out(j, jp) = 0.0;
        return st;
    }

    const int max_iter = opt.max_iter_factor * nx * nx;
    double rz = 0.0;
    for (size_t c = 0; c < n; ++c) {
        z[c] = r[c] / diag[c];
        p[c] = z[c];
        rz += r[c] * z[c];
    }
    double res = bnorm;
    while (st.iters < max_iter && res > opt.tol_pcg_fluid * bnorm) {
        ++st.iters;
        helmholtz_apply(p, react, inv_re, nx, ih2, ap);
        double pap = 0.0;
        for (size_t c = 0; c < n; ++c) pap += p[c] * ap[c];
        const double alpha = rz / pap;
        double r2 = 0.0;
        for (size_t c = 0; c < n; ++c) {
            x[c] += alpha * p[c];
            r[c] -= alpha * ap[c];
            r2 += r[c] * r[c];
        }
        res = std::sqrt(r2);
        if (res <= opt.tol_pcg_fluid * bnorm) break;
        double rz_new = 0.0;
        for (size_t c = 0; c < n; ++c) {
            z[c] = r[c] / diag[c];
            rz_new += r[c] * z[c];
        }
        const double beta = rz_new / rz;
        rz = rz_new;
        for (size_t c = 0; c < n; ++c) p[c] = z[c] + beta * p[c];
    }
    st.rel_resid = res / bnorm;
    if (st.rel_resid > opt.tol_pcg_fluid) {
        std::ostringstream os;
        os << "helmholtz pcg failed: relative residual " << st.rel_resid << " after " << st.iters
           << " iterations";
        throw SolverError(os.str());
    }
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            out(j, jp) = x[static_cast<size_t>(j - 1) + static_cast<size_t>(nx) * (jp - 1)];
    return st;
}

namespace {

// y = -D_ns[(G_neu x)/rho], the positive-semidefinite pressure operator.
struct PoissonOp {
    const Field2D& rho;
    const Grid& g;
    mutable Field2D wx, wy;  // scratch, interior significant

    PoissonOp(const Field2D& rho_, const Grid& g_) : rho(rho_), g(g_), wx(g_.nx), wy(g_.nx) {}

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        const int nx = g.nx;
        const double h2 = 2.0 * g.dx;
        auto X = [&](int j, int jp) {
            // Neumann closure of the interior-only vector
            if (j == 0) j = 1;
            if (j == nx + 1) j = nx;
            if (jp == 0) jp = 1;
            if (jp == nx + 1) jp = nx;
            return x[static_cast<size_t>(j - 1) + static_cast<size_t>(nx) * (jp - 1)];
        };
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j) {
                wx(j, jp) = (X(j + 1, jp) - X(j - 1, jp)) / h2 / rho(j, jp);
                wy(j, jp) = (X(j, jp + 1) - X(j, jp - 1)) / h2 / rho(j, jp);
            }
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j) {
                const double div =
                    (mirror_minus(wx, j + 1, jp, nx) - mirror_minus(wx, j - 1, jp, nx)) / h2 +
                    (mirror_minus(wy, j, jp + 1, nx) - mirror_minus(wy, j, jp - 1, nx)) / h2;
                y[static_cast<size_t>(j - 1) + static_cast<size_t>(nx) * (jp - 1)] = -div;
            }
    }
};

} // namespace

CgStats poisson_var_solve(const Field2D& rho, const Field2D& rhs, double dt_eff, const Grid& g,
                          const SolverOptions& opt, Field2D& q) {
    const int nx = g.nx;
    const size_t n = static_cast<size_t>(nx) * nx;

    const double mean_rhs = interior_mean(rhs, nx);
    const double scale = std::max(1.0, interior_linf(rhs, nx));
    if (std::abs(mean_rhs) > 1e-8 * scale) {
        std::ostringstream os;
        os << "poisson: incompatible right-hand side, discrete mean " << mean_rhs;
        throw SolverError(os.str());
    }

    PoissonOp op(rho, g);
    std::vector<double> x(n, 0.0), r(n), p(n), ap(n);
    double bnorm2 = 0.0;
    // b = -rhs with the mean removed, so the system is consistent to round-off
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            const size_t c = static_cast<size_t>(j - 1) + static_cast<size_t>(nx) * (jp - 1);
            r[c] = -(rhs(j, jp) - mean_rhs);
            bnorm2 += r[c] * r[c];
        }
    const double bnorm = std::sqrt(bnorm2);
    CgStats st;
    auto linf = [&](const std::vector<double>& vec) {
        double s = 0.0;
        for (double v : vec) s = std::max(s, std::abs(v));
        return s;
    };
    if (bnorm == 0.0) {
        q.fill(0.0);
        return st;
    }

    const int max_iter = opt.max_iter_factor * nx * nx;
    p = r;
    double rr = bnorm2;
    double res = bnorm;
    auto converged = [&](double res_l2, double res_inf) {
        return res_l2 <= opt.tol_pcg_fluid * bnorm && dt_eff * res_inf <= 0.5 * opt.tol_div;
    };
    while (st.iters < max_iter && !converged(res, linf(r))) {
        ++st.iters;
        op.apply(p, ap);
        double pap = 0.0;
        for (size_t c = 0; c < n; ++c) pap += p[c] * ap[c];
        if (!(pap > 0.0)) break;
        const double alpha = rr / pap;
        double r2 = 0.0;
        for (size_t c = 0; c < n; ++c) {
            x[c] += alpha * p[c];
            r[c] -= alpha * ap[c];
            r2 += r[c] * r[c];
        }
        const double beta = r2 / rr;
        rr = r2;
        res = std::sqrt(r2);
        for (size_t c = 0; c < n; ++c) p[c] = r[c] + beta * p[c];
    }
    st.rel_resid = res / bnorm;
    if (!converged(res, linf(r))) {
        std::ostringstream os;
        os << "poisson cg failed: relative residual " << st.rel_resid << " after " << st.iters
           << " iterations";
        throw SolverError(os.str());
    }
    // zero-mean gauge
    double mean_x = 0.0;
    for (size_t c = 0; c < n; ++c) mean_x += x[c];
    mean_x /= static_cast<double>(n);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            q(j, jp) = x[static_cast<size_t>(j - 1) + static_cast<size_t>(nx) * (jp - 1)] - mean_x;
    fill_ghost_p_neumann(q);
    return st;
}

// ---------------------------------------------------------------------------

PressurelessResult pressureless_step(const FluidStepInput& in, const SchemeParams& prm,
                                     const Grid& g) {
    const int nx = g.nx;
    const double dt = prm.dt;
    const double a = prm.alpha();
    const int order = prm.order;
    const int ns = prm.n_species;

    // time-history part of the right-hand side
    VecField2D rhs(nx);
    const VecField2D conv_k = convection(*in.u_k, g);
    if (order == 1) {
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j) {
                rhs.x(j, jp) = in.u_k->x(j, jp) / dt - conv_k.x(j, jp);
                rhs.y(j, jp) = in.u_k->y(j, jp) / dt - conv_k.y(j, jp);
            }
    } else {
        const VecField2D conv_m = convection(*in.u_km1, g);
        const VecField2D gp = gradient_neumann(*in.p_k, g);
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j) {
                rhs.x(j, jp) = (4.0 * in.u_k->x(j, jp) - in.u_km1->x(j, jp)) / (2.0 * dt) -
                               (2.0 * conv_k.x(j, jp) - conv_m.x(j, jp)) - gp.x(j, jp);
                rhs.y(j, jp) = (4.0 * in.u_k->y(j, jp) - in.u_km1->y(j, jp)) / (2.0 * dt) -
                               (2.0 * conv_k.y(j, jp) - conv_m.y(j, jp)) - gp.y(j, jp);
            }
    }

    // reaction coefficient and the per-species drag payload G_i
    Field2D react(nx, order == 1 ? 1.0 / dt : 3.0 / (2.0 * dt));
    std::vector<VecField2D> G;
    G.reserve(ns);
    for (int i = 0; i < ns; ++i) {
        const int size = i + 1;
        const double i23 = SchemeParams::size_pow23(size);
        const VecField2D divp = stress_divergence(*in.stress_dag[i], g);
        VecField2D gi(nx);
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j) {
                const double fx = in.grad_phi ? size * in.n_dag[i]->operator()(j, jp) *
                                                    in.grad_phi->x(j, jp)
                                              : 0.0;
                const double fy = in.grad_phi ? size * in.n_dag[i]->operator()(j, jp) *
                                                    in.grad_phi->y(j, jp)
                                              : 0.0;
                if (order == 1) {
                    gi.x(j, jp) = in.J_k[i]->x(j, jp) - dt * (divp.x(j, jp) + fx);
                    gi.y(j, jp) = in.J_k[i]->y(j, jp) - dt * (divp.y(j, jp) + fy);
                } else {
                    gi.x(j, jp) = 4.0 * in.J_k[i]->x(j, jp) - in.J_km1[i]->x(j, jp) -
                                  2.0 * dt * (divp.x(j, jp) + fx);
                    gi.y(j, jp) = 4.0 * in.J_k[i]->y(j, jp) - in.J_km1[i]->y(j, jp) -
                                  2.0 * dt * (divp.y(j, jp) + fy);
                }
            }
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j) {
                const double e23 = i23 * prm.eps(j, jp);
                const double dcoef = (order == 1)
                                         ? (1.0 - a) * prm.kappa / (e23 + (1.0 - a) * dt)
                                         : (1.0 - a) * prm.kappa / (3.0 * e23 + 2.0 * (1.0 - a) * dt);
                const double rmult = (order == 1) ? dcoef : 3.0 * dcoef;
                react(j, jp) += rmult * size * in.n_new[i]->operator()(j, jp);
                rhs.x(j, jp) += dcoef * gi.x(j, jp);
                rhs.y(j, jp) += dcoef * gi.y(j, jp);
            }
        G.push_back(std::move(gi));
    }

    PressurelessResult out;
    out.u_star = VecField2D(nx);
    const CgStats sx = helmholtz_solve(react, prm.re, rhs.x, g, prm.solver, out.u_star.x);
    const CgStats sy = helmholtz_solve(react, prm.re, rhs.y, g, prm.solver, out.u_star.y);
    out.cg_iters = sx.iters + sy.iters;
    fill_ghost_u_noslip(out.u_star);

    // closed-form J* recovery
    out.j_star.reserve(ns);
    for (int i = 0; i < ns; ++i) {
        const int size = i + 1;
        const double i23 = SchemeParams::size_pow23(size);
        VecField2D js(nx);
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j) {
                const double e23 = i23 * prm.eps(j, jp);
                const double nn = size * in.n_new[i]->operator()(j, jp);
                if (order == 1) {
                    const double den = e23 + (1.0 - a) * dt;
                    js.x(j, jp) = (e23 * G[i].x(j, jp) + (1.0 - a) * dt * nn * out.u_star.x(j, jp)) / den;
                    js.y(j, jp) = (e23 * G[i].y(j, jp) + (1.0 - a) * dt * nn * out.u_star.y(j, jp)) / den;
                } else {
                    const double den = 3.0 * e23 + 2.0 * (1.0 - a) * dt;
                    js.x(j, jp) = (e23 * G[i].x(j, jp) + 2.0 * (1.0 - a) * dt * nn * out.u_star.x(j, jp)) / den;
                    js.y(j, jp) = (e23 * G[i].y(j, jp) + 2.0 * (1.0 - a) * dt * nn * out.u_star.y(j, jp)) / den;
                }
            }
        out.j_star.push_back(std::move(js));
    }
    return out;
}

ProjectionResult projection_step(const VecField2D& u_star, const std::vector<VecField2D>& j_star,
                                 const std::vector<const Field2D*>& n_new, const Field2D& p_old,
                                 const SchemeParams& prm, const Grid& g) {
    const int nx = g.nx;
    const double dt = prm.dt;
    const double a = prm.alpha();
    const int order = prm.order;
    const int ns = prm.n_species;
    const double dt_eff = order == 1 ? dt : 2.0 * dt / 3.0;

    // rho_eps and the drag-weighted momentum sum w = u* + sum_i c_i J_i*
    std::vector<Field2D> nn;
    nn.reserve(ns);
    for (int i = 0; i < ns; ++i) nn.push_back(*n_new[i]);
    const Field2D rho = rho_eps(nn, prm.eps, prm.kappa, a, dt, order, g);

    VecField2D w(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            w.x(j, jp) = u_star.x(j, jp);
            w.y(j, jp) = u_star.y(j, jp);
        }
    for (int i = 0; i < ns; ++i) {
        const Field2D c = drag_weight(i + 1, prm.eps, prm.kappa, a, dt, order, g);
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j) {
                w.x(j, jp) += c(j, jp) * j_star[i].x(j, jp);
                w.y(j, jp) += c(j, jp) * j_star[i].y(j, jp);
            }
    }

    // Poisson right-hand side (1/dt_eff) D_ns[w/rho]
    VecField2D wr(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            wr.x(j, jp) = w.x(j, jp) / rho(j, jp);
            wr.y(j, jp) = w.y(j, jp) / rho(j, jp);
        }
    Field2D rhs = divergence_noslip(wr, g);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            rhs(j, jp) /= dt_eff;

    ProjectionResult out;
    Field2D q(nx);
    const CgStats ps = poisson_var_solve(rho, rhs, dt_eff, g, prm.solver, q);
    out.cg_iters = ps.iters;

    const VecField2D gq = gradient_neumann(q, g);
    out.u_new = VecField2D(nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            out.u_new.x(j, jp) = (w.x(j, jp) - dt_eff * gq.x(j, jp)) / rho(j, jp);
            out.u_new.y(j, jp) = (w.y(j, jp) - dt_eff * gq.y(j, jp)) / rho(j, jp);
        }
    fill_ghost_u_noslip(out.u_new);

    out.p_new = Field2D(nx);
    if (order == 1) {
        out.p_new = q;
    } else {
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j)
                out.p_new(j, jp) = p_old(j, jp) + q(j, jp);
    }
    // keep the zero-mean gauge after incrementing
    const double pm = interior_mean(out.p_new, nx);
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            out.p_new(j, jp) -= pm;
    fill_ghost_p_neumann(out.p_new);

    double cb = 0.0;
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j)
            cb += (((j + jp) % 2 == 0) ? 1.0 : -1.0) * out.p_new(j, jp);
    out.checkerboard = std::abs(cb) / (static_cast<double>(nx) * nx);

    // J** with the remaining drag share
    out.j_star2.reserve(ns);
    for (int i = 0; i < ns; ++i) {
        const int size = i + 1;
        const double i23 = SchemeParams::size_pow23(size);
        VecField2D js(nx);
        for (int jp = 1; jp <= nx; ++jp)
            for (int j = 1; j <= nx; ++j) {
                const double e23 = i23 * prm.eps(j, jp);
                const double nnu = size * n_new[i]->operator()(j, jp);
                if (order == 1) {
                    const double den = e23 + a * dt;
                    js.x(j, jp) = (e23 * j_star[i].x(j, jp) + a * dt * nnu * out.u_new.x(j, jp)) / den;
                    js.y(j, jp) = (e23 * j_star[i].y(j, jp) + a * dt * nnu * out.u_new.y(j, jp)) / den;
                } else {
                    const double den = 3.0 * e23 + 2.0 * a * dt;
                    js.x(j, jp) = (3.0 * e23 * j_star[i].x(j, jp) + 2.0 * a * dt * nnu * out.u_new.x(j, jp)) / den;
                    js.y(j, jp) = (3.0 * e23 * j_star[i].y(j, jp) + 2.0 * a * dt * nnu * out.u_new.y(j, jp)) / den;
                }
            }
        out.j_star2.push_back(std::move(js));
    }
    return out;
}

} // namespace vfpns
