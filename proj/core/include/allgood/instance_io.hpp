#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "allgood/model.hpp"

namespace allgood {

// Instance files are JSON objects
//   {"means": [..], "epsilon": 0.9, "mode": "additive", "variance": 1.0}
// "means" and "epsilon" are required; "mode" defaults to additive and
// "variance" to 1. Unknown keys are rejected.

/// Error(invalid_instance) on malformed JSON, a schema violation or an
/// invalid instance.
BanditInstance parse_instance(std::string_view json_text);

/// Error(io) when the file cannot be read; otherwise as parse_instance.
BanditInstance load_instance(const std::filesystem::path& path);

std::string instance_to_json(const BanditInstance& instance);

}  // namespace allgood
