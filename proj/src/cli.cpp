#include "vfpns/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "vfpns/config.hpp"
#include "vfpns/diagnostics.hpp"
#include "vfpns/errors.hpp"
#include "vfpns/experiments.hpp"

namespace vfpns {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ConfigError("expected a comma-separated integer list, got '" + s + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty list '" + s + "'");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError("expected a comma-separated number list, got '" + s + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty list '" + s + "'");
    return out;
}

struct RunFlags {
    std::string preset, config_path, eps_profile, out_dir;
    int nx = 0, nv = 0, order = 0, snapshot_every = -1, threads = 0;
    double eps = 0.0, re = 0.0, kappa = 0.0, tmax = 0.0;
    long steps = -2;
};

void add_run_flags(CLI::App* cmd, RunFlags& fl) {
    cmd->add_option("--preset", fl.preset, "experiment preset (accuracy|volcano|dam|injection)");
    cmd->add_option("--config", fl.config_path, "config file (key = value)");
    cmd->add_option("--nx", fl.nx, "spatial cells per direction");
    cmd->add_option("--nv", fl.nv, "velocity cells per direction");
    cmd->add_option("--eps", fl.eps, "Stokes number (or eps0 for the ex30 profile)");
    cmd->add_option("--eps-profile", fl.eps_profile, "constant | ex30");
    cmd->add_option("--re", fl.re, "Reynolds number");
    cmd->add_option("--kappa", fl.kappa, "coupling constant");
    cmd->add_option("--order", fl.order, "scheme order (1|2)")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--tmax", fl.tmax, "end time");
    cmd->add_option("--steps", fl.steps, "number of steps (overrides --tmax)");
    cmd->add_option("--out", fl.out_dir, "output directory");
    cmd->add_option("--snapshot-every", fl.snapshot_every, "snapshot cadence in steps");
    cmd->add_option("--threads", fl.threads, "worker threads for cell-parallel kernels");
}

ExperimentConfig resolve_config(const CLI::App* cmd, const RunFlags& fl,
                                const std::string& fallback_preset = "volcano") {
    ExperimentConfig cfg;
    const bool have_preset = cmd->count("--preset") > 0;
    const bool have_config = cmd->count("--config") > 0;
    if (have_config) {
        cfg = parse_config_file(fl.config_path);
        if (have_preset && fl.preset != cfg.preset)
            throw ConfigError("--preset disagrees with the config file preset");
    } else {
        cfg = default_config(preset_from_name(have_preset ? fl.preset : fallback_preset));
    }
    if (cmd->count("--nx")) cfg.nx = fl.nx;
    if (cmd->count("--nv")) cfg.nv = fl.nv;
    if (cmd->count("--eps")) cfg.eps = fl.eps;
    if (cmd->count("--eps-profile")) {
        if (fl.eps_profile != "constant" && fl.eps_profile != "ex30")
            throw ConfigError("--eps-profile must be constant or ex30");
        cfg.eps_profile = fl.eps_profile;
    }
    if (cmd->count("--re")) cfg.re = fl.re;
    if (cmd->count("--kappa")) cfg.kappa = fl.kappa;
    if (cmd->count("--order")) cfg.order = fl.order;
    if (cmd->count("--tmax")) {
        cfg.tmax = fl.tmax;
        cfg.steps = -1;
    }
    if (cmd->count("--steps")) cfg.steps = fl.steps;
    if (cmd->count("--snapshot-every")) cfg.snapshot_every = fl.snapshot_every;
    if (cmd->count("--threads")) cfg.threads = fl.threads;
    if (cfg.threads < 1) cfg.threads = 1;
    return cfg;
}

std::unique_ptr<std::ofstream> open_out(const std::string& path, std::ostream*& os) {
    if (path.empty()) {
        os = &std::cout;
        return nullptr;
    }
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw ConfigError("cannot open output file '" + path + "'");
    os = f.get();
    return f;
}

int cmd_run(const CLI::App* cmd, const RunFlags& fl) {
    const ExperimentConfig cfg = resolve_config(cmd, fl);
    ThreadPool pool(cfg.threads);
    run_experiment(cfg, fl.out_dir, &pool);
    return 0;
}

int cmd_convergence(const CLI::App* cmd, const RunFlags& fl, const std::string& nx_list_s,
                    const std::string& eps_list_s) {
    ExperimentConfig cfg = resolve_config(cmd, fl, "accuracy");
    const std::vector<int> nx_list = parse_int_list(nx_list_s);
    const std::vector<double> eps_list = parse_double_list(eps_list_s);
    ThreadPool pool(cfg.threads);
    const auto rows = convergence_study(cfg, nx_list, eps_list, &pool);

    std::ostream* os = nullptr;
    auto file = open_out(fl.out_dir, os);
    *os << "eps,field";
    for (size_t k = 0; k + 1 < nx_list.size(); ++k) *os << ",e_" << nx_list[k + 1];
    for (size_t k = 0; k + 2 < nx_list.size(); ++k) *os << ",order_" << k + 1;
    *os << "\n";
    for (const auto& r : rows) {
        *os << fmt17(r.eps) << "," << r.field;
        for (double e : r.errors) *os << "," << fmt17(e);
        for (double o : r.orders) *os << "," << fmt17(o);
        *os << "\n";
    }
    return 0;
}

int cmd_ap_test(const CLI::App* cmd, const RunFlags& fl, const std::string& eps_list_s) {
    ExperimentConfig cfg = resolve_config(cmd, fl, "volcano");
    const std::vector<double> eps_list = parse_double_list(eps_list_s);
    ThreadPool pool(cfg.threads);
    const auto series = ap_test(cfg, eps_list, &pool);

    std::ostream* os = nullptr;
    auto file = open_out(fl.out_dir, os);
    *os << "eps,step,time";
    for (int i = 1; i <= cfg.n_species; ++i) *os << ",maxw_dist_" << i;
    *os << "\n";
    for (const auto& pt : series) {
        *os << fmt17(pt.eps) << "," << pt.step << "," << fmt17(pt.time);
        for (double d : pt.dist) *os << "," << fmt17(d);
        *os << "\n";
    }
    return 0;
}

int cmd_limit_run(const CLI::App* cmd, const RunFlags& fl) {
    const ExperimentConfig cfg = resolve_config(cmd, fl);
    ThreadPool pool(cfg.threads);
    const Grid g = build_grid(make_grid_spec(cfg));
    const SchemeParams prm = make_params(cfg, g);
    LimitState ls = build_initial_limit_state(cfg, prm, g, &pool);
    const long nsteps = resolved_steps(cfg);

    std::ostream* os = nullptr;
    std::unique_ptr<std::ofstream> file;
    std::string dir = fl.out_dir;
    if (!dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
        file = std::make_unique<std::ofstream>(dir + "/limit_diagnostics.csv");
        os = file.get();
    } else {
        os = &std::cout;
    }
    *os << "step,time,nu_mass,div_inf\n";
    auto emit = [&](const LimitState& s, double div) {
        double mass = 0.0;
        for (int jp = 1; jp <= g.nx; ++jp)
            for (int j = 1; j <= g.nx; ++j)
                mass += s.nu(j, jp);
        *os << s.step << "," << fmt17(s.time) << "," << fmt17(mass * g.dx * g.dx) << ","
            << fmt17(div) << "\n";
    };
    emit(ls, 0.0);
    for (long k = 0; k < nsteps; ++k) {
        const LimitStepStats st = limit_step(ls, prm, g);
        emit(ls, st.div_inf);
    }
    if (!dir.empty()) {
        write_field_txt(dir + "/limit_nu.txt", "nu", ls.nu, g, ls.time);
        write_field_txt(dir + "/limit_ux.txt", "u_x", ls.u.x, g, ls.time);
        write_field_txt(dir + "/limit_uy.txt", "u_y", ls.u.y, g, ls.time);
        write_field_txt(dir + "/limit_p.txt", "p", ls.p, g, ls.time);
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"multi-species kinetic-fluid solver (Vlasov-Fokker-Planck / Navier-Stokes)"};
    app.require_subcommand(1);

    RunFlags fl_run, fl_conv, fl_ap, fl_limit;
    std::string nx_list_s = "16,32,64";
    std::string eps_list_s = "1,1e-3,1e-5";
    std::string ap_eps_list_s = "1,1e-2,1e-4";

    CLI::App* c_run = app.add_subcommand("run", "run a preset or config file");
    add_run_flags(c_run, fl_run);

    CLI::App* c_conv = app.add_subcommand("convergence", "grid-refinement order study");
    add_run_flags(c_conv, fl_conv);
    c_conv->add_option("--nx-list", nx_list_s, "comma list of grid sizes, each twice the last");
    c_conv->add_option("--eps-list", eps_list_s, "comma list of Stokes numbers");

    CLI::App* c_ap = app.add_subcommand("ap-test", "Maxwellian-distance series across eps");
    add_run_flags(c_ap, fl_ap);
    c_ap->add_option("--eps-list", ap_eps_list_s, "comma list of Stokes numbers");

    CLI::App* c_limit = app.add_subcommand("limit-run", "run the limiting-system solver");
    add_run_flags(c_limit, fl_limit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (c_run->parsed()) return cmd_run(c_run, fl_run);
        if (c_conv->parsed()) return cmd_convergence(c_conv, fl_conv, nx_list_s, eps_list_s);
        if (c_ap->parsed()) return cmd_ap_test(c_ap, fl_ap, ap_eps_list_s);
        if (c_limit->parsed()) return cmd_limit_run(c_limit, fl_limit);
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "error: solver: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

} // namespace vfpns
