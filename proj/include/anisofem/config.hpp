#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "anisofem/studies.hpp"

namespace anisofem {

/// Parses a TOML study file: one [[study]] table per study, run in file order.
/// Keys absent from a table keep the defaults of its kind. Throws ConfigError.
std::vector<StudyConfig> parse_config(std::string_view text, std::string_view source_name = "config");

/// Throws IoError when the file cannot be read, ConfigError when it is invalid.
std::vector<StudyConfig> load_config(const std::string& path);

}  // namespace anisofem
