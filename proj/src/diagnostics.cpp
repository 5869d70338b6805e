#include "vfpns/diagnostics.hpp"

#include <cmath>

#include "vfpns/errors.hpp"
#include "vfpns/moments.hpp"

namespace vfpns {

namespace {

constexpr double kEntropyFloor = 1e-30;

// Kahan sum over interior cells of a per-cell value.
template <class F>
double compensated_cell_sum(const Grid& g, F&& value) {
    double s = 0.0, c = 0.0;
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            const double y = value(j, jp) - c;
            const double t = s + y;
            c = (t - s) - y;
            s = t;
        }
    return s;
}

} // namespace

double species_mass(const PhaseField& f, const Grid& g, ThreadPool* pool) {
    // per-cell densities first (parallel), compensated outer sum (fixed order)
    Field2D dens(g.nx);
    const long n = static_cast<long>(g.nx) * g.nx;
    auto body = [&](long b, long e) {
        for (long c = b; c < e; ++c) {
            const int j = static_cast<int>(c % g.nx) + 1;
            const int jp = static_cast<int>(c / g.nx) + 1;
            dens(j, jp) = moments_cell(f.block(j, jp), g).n;
        }
    };
    if (pool)
        pool->parallel_for(n, default_chunk(n), body);
    else
        body(0, n);
    return compensated_cell_sum(g, [&](int j, int jp) { return dens(j, jp); }) * g.dx * g.dx;
}

double maxwellian_distance(const PhaseField& f, const Field2D& n, const VecField2D& u, int size,
                           const Grid& g, ThreadPool* pool) {
    Field2D dist(g.nx);
    const long nc = static_cast<long>(g.nx) * g.nx;
    auto body = [&](long b, long e) {
        for (long c = b; c < e; ++c) {
            const int j = static_cast<int>(c % g.nx) + 1;
            const int jp = static_cast<int>(c / g.nx) + 1;
            const double ux = u.x(j, jp), uy = u.y(j, jp), nn = n(j, jp);
            const double* blk = f.block(j, jp);
            double acc = 0.0;
            for (int mp = 0; mp < g.nv; ++mp)
                for (int m = 0; m < g.nv; ++m) {
                    const double mv = maxwellian_value(size, g.v[m], g.v[mp], ux, uy);
                    const double d = std::abs(blk[m + static_cast<size_t>(g.nv) * mp] - nn * mv);
                    acc += g.wv[m] * g.wv[mp] * d;
                }
            dist(j, jp) = acc * g.dv * g.dv;
        }
    };
    if (pool)
        pool->parallel_for(nc, default_chunk(nc), body);
    else
        body(0, nc);
    return compensated_cell_sum(g, [&](int j, int jp) { return dist(j, jp); }) * g.dx * g.dx;
}

EnergyTerms energy_entropy(const SimState& s, const SchemeParams& prm, const Grid& g,
                           ThreadPool* pool) {
    EnergyTerms out;
    const int nx = g.nx;
    const int nv = g.nv;

    // kinetic entropy + potential + kinetic energy per species
    for (size_t i = 0; i < s.species.size(); ++i) {
        const double sz = static_cast<double>(i + 1);
        const PhaseField& f = s.species[i].f;
        Field2D cell(nx);
        const long nc = static_cast<long>(nx) * nx;
        auto body = [&](long b, long e) {
            for (long c = b; c < e; ++c) {
                const int j = static_cast<int>(c % nx) + 1;
                const int jp = static_cast<int>(c / nx) + 1;
                const double phi = prm.phi(j, jp);
                const double* blk = f.block(j, jp);
                double acc = 0.0;
                for (int mp = 0; mp < nv; ++mp)
                    for (int m = 0; m < nv; ++m) {
                        const double fv = blk[m + static_cast<size_t>(nv) * mp];
                        const double v2 =
                            g.v[m] * g.v[m] + g.v[mp] * g.v[mp];
                        const double lf = std::log(std::max(fv, kEntropyFloor));
                        acc += g.wv[m] * g.wv[mp] *
                               fv * (lf + 1.0 + sz * phi + 0.5 * sz * v2);
                    }
                cell(j, jp) = acc * g.dv * g.dv;
            }
        };
        if (pool)
            pool->parallel_for(nc, default_chunk(nc), body);
        else
            body(0, nc);
        out.functional +=
            prm.kappa * compensated_cell_sum(g, [&](int j, int jp) { return cell(j, jp); }) *
            g.dx * g.dx;
    }

    // fluid kinetic energy and viscous dissipation (centered gradients, stored ghosts)
    double ke = 0.0, visc = 0.0;
    for (int jp = 1; jp <= nx; ++jp)
        for (int j = 1; j <= nx; ++j) {
            const double ux = s.u.x(j, jp), uy = s.u.y(j, jp);
            ke += 0.5 * (ux * ux + uy * uy);
            const double h2 = 2.0 * g.dx;
            const double dxux = (s.u.x(j + 1, jp) - s.u.x(j - 1, jp)) / h2;
            const double dyux = (s.u.x(j, jp + 1) - s.u.x(j, jp - 1)) / h2;
            const double dxuy = (s.u.y(j + 1, jp) - s.u.y(j - 1, jp)) / h2;
            const double dyuy = (s.u.y(j, jp + 1) - s.u.y(j, jp - 1)) / h2;
            visc += dxux * dxux + dyux * dyux + dxuy * dxuy + dyuy * dyuy;
        }
    out.functional += ke * g.dx * g.dx;
    out.viscous = visc * g.dx * g.dx;

    // Fokker-Planck dissipation term
    for (size_t i = 0; i < s.species.size(); ++i) {
        const double sz = static_cast<double>(i + 1);
        const double i13 = std::cbrt(sz);
        const double i56 = std::pow(sz, 5.0 / 6.0);
        const PhaseField& f = s.species[i].f;
        Field2D cell(nx);
        const long nc = static_cast<long>(nx) * nx;
        auto body = [&](long b, long e) {
            for (long c = b; c < e; ++c) {
                const int j = static_cast<int>(c % nx) + 1;
                const int jp = static_cast<int>(c / nx) + 1;
                const double ux = s.u.x(j, jp), uy = s.u.y(j, jp);
                const double* blk = f.block(j, jp);
                auto fv = [&](int m, int mp) {
                    if (m < 0 || m >= nv || mp < 0 || mp >= nv) return 0.0;
                    return blk[m + static_cast<size_t>(nv) * mp];
                };
                double acc = 0.0;
                for (int mp = 0; mp < nv; ++mp)
                    for (int m = 0; m < nv; ++m) {
                        const double fc = std::max(fv(m, mp), kEntropyFloor);
                        const double sq = std::sqrt(fc);
                        const double g1 = (fv(m + 1, mp) - fv(m - 1, mp)) / (2.0 * g.dv);
                        const double g2 = (fv(m, mp + 1) - fv(m, mp - 1)) / (2.0 * g.dv);
                        const double a1 = (g.v[m] - ux) * std::sqrt(i13) * sq +
                                          kThetaBar * g1 / (i56 * sq);
                        const double a2 = (g.v[mp] - uy) * std::sqrt(i13) * sq +
                                          kThetaBar * g2 / (i56 * sq);
                        acc += g.wv[m] * g.wv[mp] * (a1 * a1 + a2 * a2);
                    }
                cell(j, jp) = acc * g.dv * g.dv / prm.eps(j, jp);
            }
        };
        if (pool)
            pool->parallel_for(nc, default_chunk(nc), body);
        else
            body(0, nc);
        out.fp_dissipation +=
            prm.kappa * compensated_cell_sum(g, [&](int j, int jp) { return cell(j, jp); }) *
            g.dx * g.dx;
    }
    return out;
}

double field_linf(const Field2D& a, const Grid& g) {
    double s = 0.0;
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j)
            s = std::max(s, std::abs(a(j, jp)));
    return s;
}

double vec_linf(const VecField2D& a, const Grid& g) {
    return std::max(field_linf(a.x, g), field_linf(a.y, g));
}

double vec_l2(const VecField2D& a, const Grid& g) {
    double s = 0.0;
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j)
            s += a.x(j, jp) * a.x(j, jp) + a.y(j, jp) * a.y(j, jp);
    return std::sqrt(s * g.dx * g.dx);
}

double phase_l1(const PhaseField& f, const Grid& g) {
    double s = 0.0;
    const size_t bs = f.block_size();
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            const double* blk = f.block(j, jp);
            double cellsum = 0.0;
            for (size_t k = 0; k < bs; ++k) cellsum += std::abs(blk[k]);
            s += cellsum;
        }
    return s * g.dx * g.dx * g.dv * g.dv;
}

double phase_l2(const PhaseField& f, const Grid& g) {
    double s = 0.0;
    const size_t bs = f.block_size();
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            const double* blk = f.block(j, jp);
            double cellsum = 0.0;
            for (size_t k = 0; k < bs; ++k) cellsum += blk[k] * blk[k];
            s += cellsum;
        }
    return std::sqrt(s * g.dx * g.dx * g.dv * g.dv);
}

PhaseField coarsen_phase(const PhaseField& fine, const Grid& gf, const Grid& gc) {
    if (gf.nx != 2 * gc.nx)
        throw ConfigError("coarsen: spatial grids must differ by a factor of 2");
    const bool vhalf = (gf.nv == 2 * gc.nv);
    if (!vhalf && gf.nv != gc.nv)
        throw ConfigError("coarsen: velocity grids must match or differ by a factor of 2");
    PhaseField out(gc.nx, gc.nv);
    const int nvc = gc.nv;
    for (int jp = 1; jp <= gc.nx; ++jp)
        for (int j = 1; j <= gc.nx; ++j) {
            double* ob = out.block(j, jp);
            const double* b00 = fine.block(2 * j - 1, 2 * jp - 1);
            const double* b10 = fine.block(2 * j, 2 * jp - 1);
            const double* b01 = fine.block(2 * j - 1, 2 * jp);
            const double* b11 = fine.block(2 * j, 2 * jp);
            for (int mp = 0; mp < nvc; ++mp)
                for (int m = 0; m < nvc; ++m) {
                    double acc = 0.0;
                    if (!vhalf) {
                        const size_t k = m + static_cast<size_t>(gf.nv) * mp;
                        acc = 0.25 * (b00[k] + b10[k] + b01[k] + b11[k]);
                    } else {
                        for (int dmp = 0; dmp < 2; ++dmp)
                            for (int dm = 0; dm < 2; ++dm) {
                                const size_t k = (2 * m + dm) +
                                                 static_cast<size_t>(gf.nv) * (2 * mp + dmp);
                                acc += b00[k] + b10[k] + b01[k] + b11[k];
                            }
                        acc /= 16.0;
                    }
                    ob[m + static_cast<size_t>(nvc) * mp] = acc;
                }
        }
    return out;
}

VecField2D coarsen_vec(const VecField2D& fine, const Grid& gf, const Grid& gc) {
    if (gf.nx != 2 * gc.nx)
        throw ConfigError("coarsen: spatial grids must differ by a factor of 2");
    VecField2D out(gc.nx);
    for (int jp = 1; jp <= gc.nx; ++jp)
        for (int j = 1; j <= gc.nx; ++j) {
            out.x(j, jp) = 0.25 * (fine.x(2 * j - 1, 2 * jp - 1) + fine.x(2 * j, 2 * jp - 1) +
                                   fine.x(2 * j - 1, 2 * jp) + fine.x(2 * j, 2 * jp));
            out.y(j, jp) = 0.25 * (fine.y(2 * j - 1, 2 * jp - 1) + fine.y(2 * j, 2 * jp - 1) +
                                   fine.y(2 * j - 1, 2 * jp) + fine.y(2 * j, 2 * jp));
        }
    return out;
}

double phase_diff_l1(const PhaseField& a, const PhaseField& b, const Grid& gc) {
    double s = 0.0;
    const size_t bs = a.block_size();
    for (int jp = 1; jp <= gc.nx; ++jp)
        for (int j = 1; j <= gc.nx; ++j) {
            const double* pa = a.block(j, jp);
            const double* pb = b.block(j, jp);
            double cellsum = 0.0;
            for (size_t k = 0; k < bs; ++k) cellsum += std::abs(pa[k] - pb[k]);
            s += cellsum;
        }
    return s * gc.dx * gc.dx * gc.dv * gc.dv;
}

double vec_diff_l2(const VecField2D& a, const VecField2D& b, const Grid& g) {
    double s = 0.0;
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            const double dx = a.x(j, jp) - b.x(j, jp);
            const double dy = a.y(j, jp) - b.y(j, jp);
            s += dx * dx + dy * dy;
        }
    return std::sqrt(s * g.dx * g.dx);
}

double convergence_order(double e_coarse, double e_fine) {
    return std::log2(e_coarse / e_fine);
}

} // namespace vfpns
