#include "vfpns/presets.hpp"

#include <cmath>

#include "vfpns/boundary.hpp"
#include "vfpns/errors.hpp"
#include "vfpns/integrator.hpp"
#include "vfpns/moments.hpp"

namespace vfpns {

Preset preset_from_name(const std::string& name) {
    if (name == "accuracy") return Preset::accuracy;
    if (name == "volcano") return Preset::volcano;
    if (name == "dam") return Preset::dam;
    if (name == "injection") return Preset::injection;
    throw ConfigError("unknown preset '" + name +
                      "' (expected accuracy, volcano, dam or injection)");
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::accuracy: return "accuracy";
        case Preset::volcano: return "volcano";
        case Preset::dam: return "dam";
        case Preset::injection: return "injection";
    }
    return "?";
}

double preset_density(Preset p, double x, double y) {
    switch (p) {
        case Preset::accuracy:
            return 1e-10 + std::exp(-80.0 * (x - 0.5) * (x - 0.5) - 80.0 * (y - 0.5) * (y - 0.5));
        case Preset::volcano: {
            const double r2 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5);
            return (0.5 + 100.0 * r2) * std::exp(-40.0 * r2);
        }
        case Preset::dam:
            return 1e-10 + (x <= 0.5 ? 1.0 : 0.0);
        case Preset::injection:
            return 1e-10;
    }
    return 0.0;
}

void preset_particle_velocity(Preset p, double x, double y, double& upx, double& upy) {
    switch (p) {
        case Preset::accuracy: {
            const double sx = std::sin(M_PI * x);
            const double sy = std::sin(M_PI * y);
            upx = sx * sx * std::sin(2.0 * M_PI * y);
            upy = -sy * sy * std::sin(2.0 * M_PI * x);
            return;
        }
        case Preset::volcano: {
            const double r2 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5);
            const double env = std::exp(-20.0 * r2);
            upx = -std::sin(2.0 * M_PI * (y - 0.5)) * env;
            upy = std::sin(2.0 * M_PI * (x - 0.5)) * env;
            return;
        }
        case Preset::dam:
        case Preset::injection:
            upx = 0.0;
            upy = 0.0;
            return;
    }
}

void preset_fluid_velocity(Preset p, double x, double y, double& ux, double& uy) {
    if (p == Preset::accuracy) {
        preset_particle_velocity(p, x, y, ux, uy);
        return;
    }
    ux = 0.0;
    uy = 0.0;
}

ExperimentConfig default_config(Preset p) {
    ExperimentConfig cfg;
    cfg.preset = preset_name(p);
    switch (p) {
        case Preset::accuracy:
            cfg.re = 1.0;
            cfg.gravity = 0.0;
            cfg.tmax = 0.025;
            break;
        case Preset::volcano:
            cfg.re = 1.0;
            cfg.gravity = 0.0;
            cfg.steps = 500;
            break;
        case Preset::dam:
            cfg.re = 1000.0;
            cfg.gravity = 1.0;
            cfg.tmax = 5.0;
            break;
        case Preset::injection:
            cfg.re = 1000.0;
            cfg.gravity = 1.0;
            cfg.eps = 1e-3;
            cfg.eps_profile = "ex30";
            cfg.tmax = 5.0;
            break;
    }
    return cfg;
}

long resolved_steps(const ExperimentConfig& cfg) {
    if (cfg.steps >= 0) return cfg.steps;
    if (cfg.tmax <= 0.0) return 0;
    GridSpec gs = make_grid_spec(cfg);
    return std::llround(cfg.tmax / cfl_timestep(gs));
}

GridSpec make_grid_spec(const ExperimentConfig& cfg) {
    GridSpec gs;
    gs.nx = cfg.nx;
    gs.nv = cfg.nv;
    gs.vmax = cfg.vmax;
    return gs;
}

SchemeParams make_params(const ExperimentConfig& cfg, const Grid& g) {
    const Preset p = preset_from_name(cfg.preset);
    SchemeParams prm;
    prm.n_species = cfg.n_species;
    prm.kappa = cfg.kappa;
    prm.re = cfg.re;
    prm.gravity = cfg.gravity;
    prm.order = cfg.order;
    GridSpec gs = make_grid_spec(cfg);
    prm.dt = cfl_timestep(gs);
    prm.eps = (cfg.eps_profile == "ex30") ? epsilon_profile(g, cfg.eps)
                                          : constant_field(g, cfg.eps);
    if (cfg.eps_profile != "ex30" && cfg.eps_profile != "constant")
        throw ConfigError("eps_profile must be 'constant' or 'ex30', got '" + cfg.eps_profile +
                          "'");
    prm.phi = gravity_potential(g, cfg.gravity);
    prm.injection = (p == Preset::injection);
    prm.solver.fp_jacobi = cfg.fp_jacobi;
    prm.solver.clip_negative_f = cfg.clip_negative_f;
    prm.validate(g);
    return prm;
}

SimState build_initial_state(const ExperimentConfig& cfg, const SchemeParams& prm, const Grid& g,
                             ThreadPool* pool) {
    const Preset p = preset_from_name(cfg.preset);
    SimState s(g.nx, g.nv, prm.n_species);
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            double ux, uy;
            preset_fluid_velocity(p, g.x[j], g.x[jp], ux, uy);
            s.u.x(j, jp) = ux;
            s.u.y(j, jp) = uy;
            s.p(j, jp) = 0.0;
        }
    for (int i = 0; i < prm.n_species; ++i) {
        PhaseField& f = s.species[i].f;
        for (int jp = 1; jp <= g.nx; ++jp)
            for (int j = 1; j <= g.nx; ++j) {
                const double x = g.x[j], y = g.x[jp];
                const double n0 = preset_density(p, x, y);
                double upx, upy;
                preset_particle_velocity(p, x, y, upx, upy);
                double* blk = f.block(j, jp);
                for (int mp = 0; mp < g.nv; ++mp)
                    for (int m = 0; m < g.nv; ++m)
                        blk[m + static_cast<size_t>(g.nv) * mp] =
                            n0 * maxwellian_value(i + 1, g.v[m], g.v[mp], upx, upy);
            }
    }
    refresh_state(s, prm, g, pool);
    return s;
}

} // namespace vfpns
