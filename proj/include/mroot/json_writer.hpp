#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

namespace mroot {

/// Writes `doc` with 2-space indentation, keys in insertion order, and doubles with
/// 17 significant digits (non-finite doubles become null).
void write_json(std::ostream& out, const nlohmann::ordered_json& doc);
std::string to_json_text(const nlohmann::ordered_json& doc);

}  // namespace mroot
