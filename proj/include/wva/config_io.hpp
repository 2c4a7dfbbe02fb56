#pragma once

#include <string>

#include "wva/config.hpp"

namespace wva {

/// Applies one "key=value" assignment; throws ConfigError on unknown keys or
/// unparseable values.  Keys are the ExperimentConfig field names.
void apply_key_value(ConfigValues& values, const std::string& key, const std::string& value);

/// Reads a flat key=value config file ("#" starts a comment, blank lines
/// ignored) on top of `base`.  Throws ConfigError on syntax/unknown keys and
/// std::runtime_error when the file cannot be opened.
ConfigValues load_config_file(const std::string& path, ConfigValues base);

}  // namespace wva
