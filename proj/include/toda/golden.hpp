#pragma once

// Golden level dumps and symmetry fields stored as JSON next to the sources.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "toda/geometry.hpp"
#include "toda/report.hpp"

namespace toda {

/// $TODA_GOLDEN_DIR when set, else the directory configured at build time.
std::filesystem::path golden_dir();

/// Reads <golden_dir>/<name>.json; DomainError if missing or malformed.
nlohmann::json load_golden(const std::string& name);

/// Compares a vector field with a golden {"n", "components": [...]} entry.
CheckEntry compare_field_with_golden(const VectorField& eta, const nlohmann::json& golden, const std::string& label);

} // namespace toda
