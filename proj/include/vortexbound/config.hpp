#pragma once

#include <map>
#include <string>

namespace vortexbound {

// Flat key/value parameter file. JSON objects (numbers, strings, booleans) and a
// flat subset of TOML ("key = value" lines, '#' comments) are accepted; values
// are kept as text and parsed by whoever consumes the key.
using ConfigValues = std::map<std::string, std::string>;

ConfigValues parse_config_json(const std::string& text);
ConfigValues parse_config_toml(const std::string& text);
// Chooses the format from the extension (.json, .toml); anything else is tried as JSON.
ConfigValues load_config(const std::string& path);

}  // namespace vortexbound
