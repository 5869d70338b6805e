#pragma once

#include <stdexcept>
#include <string>

namespace vfpns {

/// Invalid user input: grid spec, config file, CLI arguments, preset names.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: iterative solver divergence, CFL violation,
/// nonpositive reaction coefficients, incompatible Neumann right-hand side.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace vfpns
