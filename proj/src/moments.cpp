#include "vfpns/moments.hpp"

namespace vfpns {

CellMoments moments_cell(const double* blk, const Grid& g) {
    const int nv = g.nv;
    const int half = nv / 2;
    double n = 0, j1 = 0, j2 = 0, pxx = 0, pxy = 0, pyy = 0;
    for (int mp = 0; mp < half; ++mp) {
        const int mq = nv - 1 - mp;
        const double V2 = g.v[mq];  // positive half
        double rn = 0, rj1 = 0, rj2 = 0, rpxx = 0, rpxy = 0, rpyy = 0;
        for (int m = 0; m < half; ++m) {
            const int mm = nv - 1 - m;
            const double V1 = g.v[mm];
            const double wm = g.wv[m];
            const double f00 = blk[m + static_cast<size_t>(nv) * mp];
            const double f10 = blk[mm + static_cast<size_t>(nv) * mp];
            const double f01 = blk[m + static_cast<size_t>(nv) * mq];
            const double f11 = blk[mm + static_cast<size_t>(nv) * mq];
            const double splus = (f00 + f10) + (f01 + f11);
            rn += wm * splus;
            rj1 += wm * V1 * ((f10 + f11) - (f00 + f01));
            rj2 += wm * V2 * ((f01 + f11) - (f00 + f10));
            rpxx += wm * (V1 * V1) * splus;
            rpyy += wm * (V2 * V2) * splus;
            rpxy += wm * (V1 * V2) * ((f00 + f11) - (f10 + f01));
        }
        const double wmp = g.wv[mp];
        n += wmp * rn;
        j1 += wmp * rj1;
        j2 += wmp * rj2;
        pxx += wmp * rpxx;
        pxy += wmp * rpxy;
        pyy += wmp * rpyy;
    }
    const double dv2 = g.dv * g.dv;
    return {n * dv2, j1 * dv2, j2 * dv2, pxx * dv2, pxy * dv2, pyy * dv2};
}

MomentSet compute_moments(const PhaseField& f, const Grid& g, int size, ThreadPool* pool) {
    MomentSet out(g.nx);
    const long ncells = static_cast<long>(g.nx + 2) * (g.nx + 2);
    const double s = static_cast<double>(size);
    auto body = [&](long b, long e) {
        for (long c = b; c < e; ++c) {
            const int j = static_cast<int>(c % (g.nx + 2));
            const int jp = static_cast<int>(c / (g.nx + 2));
            const CellMoments cm = moments_cell(f.block(j, jp), g);
            out.n(j, jp) = cm.n;
            out.J.x(j, jp) = s * cm.j1;
            out.J.y(j, jp) = s * cm.j2;
            out.pxx(j, jp) = s * cm.pxx;
            out.pxy(j, jp) = s * cm.pxy;
            out.pyy(j, jp) = s * cm.pyy;
        }
    };
    if (pool)
        pool->parallel_for(ncells, default_chunk(ncells), body);
    else
        body(0, ncells);
    return out;
}

Field2D density_moment(const PhaseField& f, const Grid& g, ThreadPool* pool) {
    Field2D out(g.nx);
    const long ncells = static_cast<long>(g.nx + 2) * (g.nx + 2);
    auto body = [&](long b, long e) {
        for (long c = b; c < e; ++c) {
            const int j = static_cast<int>(c % (g.nx + 2));
            const int jp = static_cast<int>(c / (g.nx + 2));
            out(j, jp) = moments_cell(f.block(j, jp), g).n;
        }
    };
    if (pool)
        pool->parallel_for(ncells, default_chunk(ncells), body);
    else
        body(0, ncells);
    return out;
}

double maxwellian_value(int size, double v1, double v2, double ux, double uy) {
    const double i = static_cast<double>(size);
    const double d1 = v1 - ux;
    const double d2 = v2 - uy;
    return i / (2.0 * M_PI) * std::exp(-0.5 * i * (d1 * d1 + d2 * d2));
}

void sqrt_maxwellian_block(int size, double ux, double uy, const Grid& g, double* out) {
    const double i = static_cast<double>(size);
    const double amp = std::sqrt(i / (2.0 * M_PI));
    const int nv = g.nv;
    for (int mp = 0; mp < nv; ++mp) {
        const double d2 = g.v[mp] - uy;
        const double e2 = -0.25 * i * d2 * d2;
        for (int m = 0; m < nv; ++m) {
            const double d1 = g.v[m] - ux;
            out[m + static_cast<size_t>(nv) * mp] = amp * std::exp(-0.25 * i * d1 * d1 + e2);
        }
    }
}

PhaseField maxwellian_field(const VecField2D& u, int size, const Grid& g) {
    PhaseField out(g.nx, g.nv);
    const int nv = g.nv;
    for (int jp = 0; jp <= g.nx + 1; ++jp)
        for (int j = 0; j <= g.nx + 1; ++j) {
            double* blk = out.block(j, jp);
            for (int mp = 0; mp < nv; ++mp)
                for (int m = 0; m < nv; ++m)
                    blk[m + static_cast<size_t>(nv) * mp] =
                        maxwellian_value(size, g.v[m], g.v[mp], u.x(j, jp), u.y(j, jp));
        }
    return out;
}

Field2D composite_density(const std::vector<Field2D>& n, const Grid& g) {
    Field2D nu(g.nx, 0.0);
    for (size_t i = 0; i < n.size(); ++i) {
        const double s = static_cast<double>(i + 1);
        for (int jp = 0; jp <= g.nx + 1; ++jp)
            for (int j = 0; j <= g.nx + 1; ++j)
                nu(j, jp) += s * n[i](j, jp);
    }
    return nu;
}

Field2D drag_weight(int size, const Field2D& eps, double kappa, double alpha, double dt,
                    int order, const Grid& g) {
    Field2D c(g.nx);
    const double i23 = std::cbrt(static_cast<double>(size) * size);
    for (int jp = 0; jp <= g.nx + 1; ++jp)
        for (int j = 0; j <= g.nx + 1; ++j) {
            const double e = eps(j, jp);
            c(j, jp) = (order == 1) ? alpha * kappa * dt / (i23 * e + alpha * dt)
                                    : 2.0 * alpha * kappa * dt / (3.0 * i23 * e + 2.0 * alpha * dt);
        }
    return c;
}

Field2D rho_eps(const std::vector<Field2D>& n_new, const Field2D& eps, double kappa,
                double alpha, double dt, int order, const Grid& g) {
    Field2D rho(g.nx, 1.0);
    for (size_t i = 0; i < n_new.size(); ++i) {
        const int size = static_cast<int>(i + 1);
        const Field2D c = drag_weight(size, eps, kappa, alpha, dt, order, g);
        for (int jp = 0; jp <= g.nx + 1; ++jp)
            for (int j = 0; j <= g.nx + 1; ++j)
                rho(j, jp) += c(j, jp) * size * n_new[i](j, jp);
    }
    return rho;
}

} // namespace vfpns
