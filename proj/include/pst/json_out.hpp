#pragma once

#include <string>

#include "json.hpp"

namespace pst {

// Deterministic JSON text: keys in insertion order as held by the value,
// doubles with 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& value, int indent = 2);
std::string format_double(double x);

}  // namespace pst
