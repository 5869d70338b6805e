#pragma once

#include <vector>

#include "vfpns/field.hpp"

namespace vfpns {

/// User-facing grid specification. The spatial domain is fixed to [0,1]^2,
/// the velocity box to [-vmax, vmax]^2, both cell-centered Cartesian.
struct GridSpec {
    int nx = 128;       // cells per spatial direction
    int nv = 32;        // cells per velocity direction, must be even
    double vmax = 8.0;  // velocity-domain half width

    void validate() const;  // throws ConfigError
};

/// Coordinate tables derived from a GridSpec. Pure function of the spec:
/// identical across runs.
struct Grid {
    int nx = 0;
    int nv = 0;
    double vmax = 0.0;
    double dx = 0.0;
    double dv = 0.0;
    std::vector<double> x;   // size nx+2, cell centers incl. ghosts: x[j] = (j-1/2)dx
    std::vector<double> v;   // size nv, v[m] = (m+1/2)dv - vmax, symmetric to the bit
    std::vector<double> wv;  // trapezoid weights: 1/2 at the extreme indices, 1 inside

    size_t n_cells() const { return static_cast<size_t>(nx) * nx; }
    size_t n_vcells() const { return static_cast<size_t>(nv) * nv; }
};

/// Builds the coordinate tables; velocity centers are constructed as
/// odd-integer multiples of dv/2 so that v[m] == -v[nv-1-m] exactly.
Grid build_grid(const GridSpec& spec);

/// Transport CFL time step dt = dx / (5 vmax).
double cfl_timestep(const GridSpec& spec);

/// External potential Phi = g*y sampled at cell centers, ghosts included.
Field2D gravity_potential(const Grid& grid, double g);

/// Spatially varying Stokes number
///   eps(x,y) = eps0 + (tanh(10-80s) + tanh(10+80s))/2,  s = x - 1/2 - sin(2 pi y)/4,
/// sampled at cell centers (ghosts included).
Field2D epsilon_profile(const Grid& grid, double eps0);

/// Constant field (ghosts included); constant eps runs use this.
Field2D constant_field(const Grid& grid, double value);

} // namespace vfpns
