#include "vfpns/grid.hpp"

#include <cmath>
#include <string>

#include "vfpns/errors.hpp"

namespace vfpns {

void GridSpec::validate() const {
    if (nx < 4) throw ConfigError("grid: nx must be >= 4, got " + std::to_string(nx));
    if (nv < 4) throw ConfigError("grid: nv must be >= 4, got " + std::to_string(nv));
    if (nv % 2 != 0) throw ConfigError("grid: nv must be even, got " + std::to_string(nv));
    if (!(vmax > 0.0)) throw ConfigError("grid: vmax must be positive");
}

Grid build_grid(const GridSpec& spec) {
    spec.validate();
    Grid g;
    g.nx = spec.nx;
    g.nv = spec.nv;
    g.vmax = spec.vmax;
    g.dx = 1.0 / spec.nx;
    g.dv = 2.0 * spec.vmax / spec.nv;

    g.x.resize(spec.nx + 2);
    for (int j = 0; j <= spec.nx + 1; ++j)
        g.x[j] = (j - 0.5) * g.dx;

    // v[m] = (2m + 1 - nv) * dv/2; the integer factor flips sign exactly under
    // m -> nv-1-m, so the table is symmetric to the bit.
    g.v.resize(spec.nv);
    for (int m = 0; m < spec.nv; ++m)
        g.v[m] = (2 * m + 1 - spec.nv) * (0.5 * g.dv);

    g.wv.assign(spec.nv, 1.0);
    g.wv.front() = 0.5;
    g.wv.back() = 0.5;
    return g;
}

double cfl_timestep(const GridSpec& spec) {
    spec.validate();
    return (1.0 / spec.nx) / (5.0 * spec.vmax);
}

Field2D gravity_potential(const Grid& grid, double g) {
    Field2D phi(grid.nx);
    for (int jp = 0; jp <= grid.nx + 1; ++jp)
        for (int j = 0; j <= grid.nx + 1; ++j)
            phi(j, jp) = g * grid.x[jp];
    return phi;
}

Field2D epsilon_profile(const Grid& grid, double eps0) {
    Field2D eps(grid.nx);
    for (int jp = 0; jp <= grid.nx + 1; ++jp) {
        const double y = grid.x[jp];
        for (int j = 0; j <= grid.nx + 1; ++j) {
            const double s = grid.x[j] - 0.5 - 0.25 * std::sin(2.0 * M_PI * y);
            eps(j, jp) = eps0 + 0.5 * (std::tanh(10.0 - 80.0 * s) + std::tanh(10.0 + 80.0 * s));
        }
    }
    return eps;
}

Field2D constant_field(const Grid& grid, double value) {
    return Field2D(grid.nx, value);
}

} // namespace vfpns
