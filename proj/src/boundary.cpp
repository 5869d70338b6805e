#include "vfpns/boundary.hpp"

#include <cstring>

#include "vfpns/errors.hpp"

namespace vfpns {

namespace {

// Copies a velocity block reflecting the m (v1) index.
void copy_reflect_m(const double* src, double* dst, int nv) {
    for (int mp = 0; mp < nv; ++mp) {
        const double* s = src + static_cast<size_t>(nv) * mp;
        double* d = dst + static_cast<size_t>(nv) * mp;
        for (int m = 0; m < nv; ++m)
            d[m] = s[nv - 1 - m];
    }
}

// Copies a velocity block reflecting the mp (v2) index.
void copy_reflect_mp(const double* src, double* dst, int nv) {
    for (int mp = 0; mp < nv; ++mp) {
        const double* s = src + static_cast<size_t>(nv) * (nv - 1 - mp);
        double* d = dst + static_cast<size_t>(nv) * mp;
        std::memcpy(d, s, sizeof(double) * nv);
    }
}

} // namespace

void fill_ghost_f_specular(PhaseField& f) {
    const int nx = f.nx();
    const int nv = f.nv();
    // x-walls first (interior rows only), then y-walls over the extended
    // columns so the corners pick up the composed double reflection.
    for (int jp = 1; jp <= nx; ++jp) {
        copy_reflect_m(f.block(1, jp), f.block(0, jp), nv);
        copy_reflect_m(f.block(nx, jp), f.block(nx + 1, jp), nv);
    }
    for (int j = 0; j <= nx + 1; ++j) {
        copy_reflect_mp(f.block(j, 1), f.block(j, 0), nv);
        copy_reflect_mp(f.block(j, nx), f.block(j, nx + 1), nv);
    }
}

void fill_ghost_odd(Field2D& a) {
    const int nx = a.nx();
    for (int jp = 1; jp <= nx; ++jp) {
        a(0, jp) = -a(1, jp);
        a(nx + 1, jp) = -a(nx, jp);
    }
    for (int j = 0; j <= nx + 1; ++j) {
        a(j, 0) = -a(j, 1);
        a(j, nx + 1) = -a(j, nx);
    }
}

void fill_ghost_u_noslip(VecField2D& u) {
    fill_ghost_odd(u.x);
    fill_ghost_odd(u.y);
}

void fill_ghost_p_neumann(Field2D& p) {
    const int nx = p.nx();
    for (int jp = 1; jp <= nx; ++jp) {
        p(0, jp) = p(1, jp);
        p(nx + 1, jp) = p(nx, jp);
    }
    for (int j = 0; j <= nx + 1; ++j) {
        p(j, 0) = p(j, 1);
        p(j, nx + 1) = p(j, nx);
    }
}

void injection_segment(int species_index, double& y0, double& y1) {
    if (species_index == 0) {
        y0 = 0.475;
        y1 = 0.575;
    } else if (species_index == 1) {
        y0 = 0.45;
        y1 = 0.55;
    } else {
        throw ConfigError("injection: no entrance segment for species index " +
                          std::to_string(species_index));
    }
}

void apply_injection(PhaseField& f, int species_index, const Grid& grid) {
    if (species_index > 1) return;  // only the two paper species inject
    double y0, y1;
    injection_segment(species_index, y0, y1);
    const int nx = f.nx();
    const int nv = f.nv();
    for (int jp = 1; jp <= nx; ++jp) {
        const double y = grid.x[jp];
        if (y < y0 || y > y1) continue;
        double* blk = f.block(0, jp);
        for (int mp = 0; mp < nv; ++mp)
            for (int m = 0; m < nv; ++m) {
                const double v1 = grid.v[m];
                blk[m + static_cast<size_t>(nv) * mp] = (v1 >= 2.0 && v1 <= 3.0) ? 1.0 : 0.0;
            }
    }
}

} // namespace vfpns
