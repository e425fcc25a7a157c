#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "eonbam/scenario.hpp"

namespace eonbam {

/// Parses the sectioned key-value scenario format (see README) and validates
/// the result. Throws ParseError (line/field) or ValidationError.
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a config file. Throws Error if the file cannot be read.
ScenarioConfig load_config(const std::filesystem::path& file);

/// Renders `config` in the same format; parse_config(format_config(c)) == c.
std::string format_config(const ScenarioConfig& config);

}  // namespace eonbam
