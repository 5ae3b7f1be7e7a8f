#pragma once

#include <json.hpp>
#include <string>

#include "fmu/analysis.hpp"

namespace fmu {

using Json = nlohmann::json;  // object keys serialize sorted

Json to_json(const Rational& r);
Json to_json(const Bounds& b);
// Array of {"value", "prob"} sorted by the printed value.
Json to_json(const Distribution& d);

// {"command":..., "input":..., "result":...} on one line.
std::string emit_json(const std::string& command, const Json& input, const Json& result);

}  // namespace fmu
