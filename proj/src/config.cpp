#include "vfpns/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "vfpns/errors.hpp"

namespace vfpns {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long r = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "0" || v == "false") return false;
    if (v == "1" || v == "true") return true;
    throw ConfigError("config: key '" + key + "' expects 0/1/true/false, got '" + v + "'");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "preset") {
        preset_from_name(value);  // validate
        cfg.preset = value;
    } else if (key == "nx") {
        cfg.nx = static_cast<int>(parse_long(key, value));
    } else if (key == "nv") {
        cfg.nv = static_cast<int>(parse_long(key, value));
    } else if (key == "vmax") {
        cfg.vmax = parse_double(key, value);
    } else if (key == "order") {
        cfg.order = static_cast<int>(parse_long(key, value));
        if (cfg.order != 1 && cfg.order != 2)
            throw ConfigError("config: order must be 1 or 2");
    } else if (key == "eps") {
        cfg.eps = parse_double(key, value);
    } else if (key == "eps_profile") {
        if (value != "constant" && value != "ex30")
            throw ConfigError("config: eps_profile must be 'constant' or 'ex30'");
        cfg.eps_profile = value;
    } else if (key == "re") {
        cfg.re = parse_double(key, value);
    } else if (key == "kappa") {
        cfg.kappa = parse_double(key, value);
    } else if (key == "gravity") {
        cfg.gravity = parse_double(key, value);
    } else if (key == "n_species") {
        cfg.n_species = static_cast<int>(parse_long(key, value));
    } else if (key == "tmax") {
        cfg.tmax = parse_double(key, value);
    } else if (key == "steps") {
        cfg.steps = parse_long(key, value);
    } else if (key == "snapshot_every") {
        cfg.snapshot_every = static_cast<int>(parse_long(key, value));
    } else if (key == "threads") {
        cfg.threads = static_cast<int>(parse_long(key, value));
    } else if (key == "fp_jacobi") {
        cfg.fp_jacobi = parse_bool(key, value);
    } else if (key == "clip_negative_f") {
        cfg.clip_negative_f = parse_bool(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    // first pass: find the preset so defaults resolve before overrides
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: '" + path + "' line " + std::to_string(lineno) +
                              ": expected key = value");
        entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    std::string preset = "volcano";
    for (const auto& [k, v] : entries)
        if (k == "preset") preset = v;
    ExperimentConfig cfg = default_config(preset_from_name(preset));
    for (const auto& [k, v] : entries) apply_config_entry(cfg, k, v);
    return cfg;
}

std::string config_to_string(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "preset = " << cfg.preset << "\n"
       << "nx = " << cfg.nx << "\n"
       << "nv = " << cfg.nv << "\n"
       << "vmax = " << fmt(cfg.vmax) << "\n"
       << "order = " << cfg.order << "\n"
       << "eps = " << fmt(cfg.eps) << "\n"
       << "eps_profile = " << cfg.eps_profile << "\n"
       << "re = " << fmt(cfg.re) << "\n"
       << "kappa = " << fmt(cfg.kappa) << "\n"
       << "gravity = " << fmt(cfg.gravity) << "\n"
       << "n_species = " << cfg.n_species << "\n"
       << "tmax = " << fmt(cfg.tmax) << "\n"
       << "steps = " << cfg.steps << "\n"
       << "snapshot_every = " << cfg.snapshot_every << "\n"
       << "threads = " << cfg.threads << "\n"
       << "fp_jacobi = " << (cfg.fp_jacobi ? 1 : 0) << "\n"
       << "clip_negative_f = " << (cfg.clip_negative_f ? 1 : 0) << "\n";
    return os.str();
}

} // namespace vfpns
