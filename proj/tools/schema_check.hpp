#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace gaborheat_cli {

/// Validates `doc` against the JSON Schema subset used by the run config:
/// type, properties, additionalProperties (false), required, items, minItems,
/// maxItems, minLength, enum, anyOf, minimum, maximum, exclusiveMinimum.
/// Returns one message per violation.
std::vector<std::string> validate(const nlohmann::json& schema, const nlohmann::json& doc,
                                  const std::string& path = "$");

}  // namespace gaborheat_cli
