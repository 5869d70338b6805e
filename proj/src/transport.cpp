#include "vfpns/transport.hpp"

#include <vector>

namespace vfpns {

namespace {

// x-direction sweep for one jp row: walks faces left to right keeping the
// previous face flux, writes (F_right - F_left)/dx into out.
void sweep_x(const PhaseField& f, const Grid& g, int jp, double* fprev, double* fcur,
             PhaseField& out) {
    const int nx = g.nx;
    const int nv = g.nv;
    const size_t bs = f.block_size();
    // wall face between ghost 0 and cell 1
    {
        const double* fl = f.block(0, jp);
        const double* fr = f.block(1, jp);
        for (size_t idx = 0; idx < bs; ++idx)
            fprev[idx] = face_flux_wall(g.v[idx % nv], fl[idx], fr[idx]);
    }
    for (int c = 1; c <= nx; ++c) {
        if (c == nx) {
            const double* fl = f.block(nx, jp);
            const double* fr = f.block(nx + 1, jp);
            for (size_t idx = 0; idx < bs; ++idx)
                fcur[idx] = face_flux_wall(g.v[idx % nv], fl[idx], fr[idx]);
        } else {
            const double* fm1 = f.block(c - 1, jp);
            const double* f0 = f.block(c, jp);
            const double* f1 = f.block(c + 1, jp);
            const double* f2 = f.block(c + 2, jp);
            for (size_t idx = 0; idx < bs; ++idx)
                fcur[idx] = face_flux(g.v[idx % nv], fm1[idx], f0[idx], f1[idx], f2[idx]);
        }
        double* o = out.block(c, jp);
        for (size_t idx = 0; idx < bs; ++idx)
            o[idx] = (fcur[idx] - fprev[idx]) / g.dx;
        std::swap(fprev, fcur);
    }
}

// y-direction sweep for one j column; accumulates into out.
void sweep_y(const PhaseField& f, const Grid& g, int j, double* fprev, double* fcur,
             PhaseField& out) {
    const int nx = g.nx;
    const int nv = g.nv;
    const size_t bs = f.block_size();
    {
        const double* fl = f.block(j, 0);
        const double* fr = f.block(j, 1);
        for (size_t idx = 0; idx < bs; ++idx)
            fprev[idx] = face_flux_wall(g.v[idx / nv], fl[idx], fr[idx]);
    }
    for (int c = 1; c <= nx; ++c) {
        if (c == nx) {
            const double* fl = f.block(j, nx);
            const double* fr = f.block(j, nx + 1);
            for (size_t idx = 0; idx < bs; ++idx)
                fcur[idx] = face_flux_wall(g.v[idx / nv], fl[idx], fr[idx]);
        } else {
            const double* fm1 = f.block(j, c - 1);
            const double* f0 = f.block(j, c);
            const double* f1 = f.block(j, c + 1);
            const double* f2 = f.block(j, c + 2);
            for (size_t idx = 0; idx < bs; ++idx)
                fcur[idx] = face_flux(g.v[idx / nv], fm1[idx], f0[idx], f1[idx], f2[idx]);
        }
        double* o = out.block(j, c);
        for (size_t idx = 0; idx < bs; ++idx)
            o[idx] += (fcur[idx] - fprev[idx]) / g.dx;
        std::swap(fprev, fcur);
    }
}

} // namespace

void advect_x(const PhaseField& f, const Grid& g, ThreadPool* pool, PhaseField& out) {
    const size_t bs = f.block_size();
    auto run_x = [&](long b, long e) {
        std::vector<double> fa(bs), fb(bs);
        for (long jp = b; jp < e; ++jp)
            sweep_x(f, g, static_cast<int>(jp) + 1, fa.data(), fb.data(), out);
    };
    auto run_y = [&](long b, long e) {
        std::vector<double> fa(bs), fb(bs);
        for (long j = b; j < e; ++j)
            sweep_y(f, g, static_cast<int>(j) + 1, fa.data(), fb.data(), out);
    };
    if (pool) {
        pool->parallel_for(g.nx, 4, run_x);
        pool->parallel_for(g.nx, 4, run_y);
    } else {
        run_x(0, g.nx);
        run_y(0, g.nx);
    }
}

void accel_v(const PhaseField& f, const Grid& g, const VecField2D& grad_phi, ThreadPool* pool,
             double scale, PhaseField& acc) {
    const int nv = g.nv;
    auto body = [&](long b, long e) {
        std::vector<double> flux(nv + 1);
        for (long c = b; c < e; ++c) {
            const int j = static_cast<int>(c % g.nx) + 1;
            const int jp = static_cast<int>(c / g.nx) + 1;
            const double a1 = -grad_phi.x(j, jp);
            const double a2 = -grad_phi.y(j, jp);
            const double* blk = f.block(j, jp);
            double* out = acc.block(j, jp);
            if (a1 != 0.0) {
                // v1 direction: rows of the block, zero beyond the box
                for (int mp = 0; mp < nv; ++mp) {
                    const double* line = blk + static_cast<size_t>(nv) * mp;
                    auto get = [&](int k) { return (k >= 0 && k < nv) ? line[k] : 0.0; };
                    for (int k = 0; k <= nv; ++k)
                        flux[k] = face_flux(a1, get(k - 2), get(k - 1), get(k), get(k + 1));
                    double* oline = out + static_cast<size_t>(nv) * mp;
                    for (int k = 0; k < nv; ++k)
                        oline[k] -= scale * (flux[k + 1] - flux[k]) / g.dv;
                }
            }
            if (a2 != 0.0) {
                // v2 direction: columns, stride nv
                for (int m = 0; m < nv; ++m) {
                    const double* line = blk + m;
                    auto get = [&](int k) {
                        return (k >= 0 && k < nv) ? line[static_cast<size_t>(nv) * k] : 0.0;
                    };
                    for (int k = 0; k <= nv; ++k)
                        flux[k] = face_flux(a2, get(k - 2), get(k - 1), get(k), get(k + 1));
                    double* ocol = out + m;
                    for (int k = 0; k < nv; ++k)
                        ocol[static_cast<size_t>(nv) * k] -= scale * (flux[k + 1] - flux[k]) / g.dv;
                }
            }
        }
    };
    const long n = static_cast<long>(g.nx) * g.nx;
    if (pool)
        pool->parallel_for(n, default_chunk(n), body);
    else
        body(0, n);
}

VecField2D centered_gradient_raw(const Field2D& s, const Grid& g) {
    VecField2D out(g.nx);
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            out.x(j, jp) = (s(j + 1, jp) - s(j - 1, jp)) / (2.0 * g.dx);
            out.y(j, jp) = (s(j, jp + 1) - s(j, jp - 1)) / (2.0 * g.dx);
        }
    return out;
}

} // namespace vfpns
