#pragma once

namespace vfpns {

/// Command-line entry point (subcommands: run, convergence, ap-test,
/// limit-run). Returns the process exit status; failures print one
/// machine-readable `error: <category>: <message>` line to stderr.
int run_cli(int argc, const char* const* argv);

} // namespace vfpns
