#pragma once

#include <map>
#include <string>

#include "vfpns/presets.hpp"

namespace vfpns {

// Flat typed key=value configuration. Lines are `key = value`; blank lines
// and lines starting with '#' are ignored; unknown keys are errors. A run's
// metadata file is itself a valid config reproducing the run.

/// Parses a config file into the preset's defaults overridden by the file's
/// keys. Throws ConfigError on unknown keys or malformed values.
ExperimentConfig parse_config_file(const std::string& path);

/// Applies key=value pairs on top of cfg (same validation as the file path).
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Serializes a resolved config as the key=value block of the metadata file.
std::string config_to_string(const ExperimentConfig& cfg);

} // namespace vfpns
