#pragma once

#include <map>
#include <string>
#include <vector>

#include "mroot/tensor_core.hpp"

namespace mroot {

/// An expected property of a catalog metric and where the expectation comes from.
struct KnownFlag {
  bool value;
  std::string provenance;
};

struct CatalogEntry {
  std::string name;
  MetricSpec spec;
  std::map<std::string, KnownFlag> known_flags;
};

/// euclid2, conformal2, berwald_moor3 or quartic2; throws Error on other names.
CatalogEntry catalog_metric(const std::string& name);

std::vector<std::string> catalog_names();

}  // namespace mroot
