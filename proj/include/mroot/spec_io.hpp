#pragma once

// Metric spec file format:
//   {"dimension": n, "degree": m,
//    "coefficients": [{"index": [i1,...,im], "poly": [{"exp": [e1,...,en], "coeff": c}]}]}
// Index entries are 1-based and sorted ascending.

#include <string>

#include <json.hpp>

#include "mroot/tensor_core.hpp"

namespace mroot {

/// Parses and validates a spec document. Throws SpecError naming the offending field.
MetricSpec spec_from_json(const nlohmann::json& doc);
MetricSpec spec_from_string(const std::string& text);
MetricSpec load_spec(const std::string& path);

nlohmann::ordered_json spec_to_json(const MetricSpec& spec);

}  // namespace mroot
