#include "vfpns/params.hpp"

#include <string>

#include "vfpns/errors.hpp"

namespace vfpns {

void SchemeParams::validate(const Grid& grid) const {
    if (n_species < 1) throw ConfigError("params: n_species must be >= 1");
    if (!(kappa > 0.0)) throw ConfigError("params: kappa must be positive");
    if (!(re > 0.0)) throw ConfigError("params: re must be positive");
    if (!(dt > 0.0)) throw ConfigError("params: dt must be positive");
    if (order != 1 && order != 2) throw ConfigError("params: order must be 1 or 2");
    const double a = alpha();
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("params: alpha out of (0,1)");
    if (eps.nx() != grid.nx || phi.nx() != grid.nx)
        throw ConfigError("params: eps/phi field size does not match the grid");
    for (int jp = 0; jp <= grid.nx + 1; ++jp)
        for (int j = 0; j <= grid.nx + 1; ++j) {
            const double e = eps(j, jp);
            if (!(e > 0.0) || e > 1.25 || !std::isfinite(e))
                throw ConfigError("params: eps must lie in (0, ~1], got " + std::to_string(e));
            if (!std::isfinite(phi(j, jp)))
                throw ConfigError("params: phi must be finite");
        }
}

} // namespace vfpns
