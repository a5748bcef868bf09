#include "mroot/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "mroot/errors.hpp"

namespace mroot {
namespace {

using nlohmann::json;

int require_int(const json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key)) throw SpecError(where + ": missing field '" + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw SpecError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::vector<int> int_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw SpecError(where + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number_integer()) {
      throw SpecError(where + "[" + std::to_string(k) + "]: expected an integer");
    }
    out.push_back(v[k].get<int>());
  }
  return out;
}

std::string index_label(const std::vector<int>& index) {
  std::string s = "[";
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(index[k]);
  }
  return s + "]";
}

}  // namespace

MetricSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw SpecError("spec: expected a JSON object");
  const int n = require_int(doc, "dimension", "spec");
  const int m = require_int(doc, "degree", "spec");
  if (n < 1) throw SpecError("spec.dimension: must be at least 1, got " + std::to_string(n));
  if (m < 2) throw SpecError("spec.degree: must be at least 2, got " + std::to_string(m));
  if (!doc.contains("coefficients") || !doc.at("coefficients").is_array()) {
    throw SpecError("spec.coefficients: expected an array");
  }

  std::map<MultiIndex, XPolynomial> coeffs;
  const json& list = doc.at("coefficients");
  for (std::size_t c = 0; c < list.size(); ++c) {
    const std::string where = "coefficients[" + std::to_string(c) + "]";
    const json& entry = list[c];
    if (!entry.is_object() || !entry.contains("index") || !entry.contains("poly")) {
      throw SpecError(where + ": expected an object with 'index' and 'poly'");
    }
    std::vector<int> index = int_array(entry.at("index"), where + ".index");
    const std::string label = where + ".index " + index_label(index);
    if (static_cast<int>(index.size()) != m) {
      throw SpecError(label + ": expected " + std::to_string(m) + " entries");
    }
    for (int& i : index) {
      if (i < 1 || i > n) {
        throw SpecError(label + ": entries must lie in [1, " + std::to_string(n) + "]");
      }
      --i;
    }
    if (!std::is_sorted(index.begin(), index.end())) {
      throw SpecError(label + ": entries must be sorted ascending (coefficients are symmetric; "
                              "list each component once)");
    }
    MultiIndex key(index);
    if (coeffs.count(key)) throw SpecError(label + ": duplicate coefficient");

    const json& poly = entry.at("poly");
    if (!poly.is_array()) throw SpecError(where + ".poly: expected an array");
    XPolynomial p;
    std::set<std::vector<int>> seen;
    for (std::size_t t = 0; t < poly.size(); ++t) {
      const std::string twhere = where + ".poly[" + std::to_string(t) + "]";
      const json& term = poly[t];
      if (!term.is_object() || !term.contains("exp") || !term.contains("coeff")) {
        throw SpecError(twhere + ": expected an object with 'exp' and 'coeff'");
      }
      std::vector<int> exps = int_array(term.at("exp"), twhere + ".exp");
      if (static_cast<int>(exps.size()) != n) {
        throw SpecError(twhere + ".exp: expected " + std::to_string(n) + " exponents");
      }
      for (int e : exps) {
        if (e < 0) throw SpecError(twhere + ".exp: exponents must be non-negative");
      }
      if (!seen.insert(exps).second) throw SpecError(twhere + ".exp: duplicate exponent tuple");
      if (!term.at("coeff").is_number()) throw SpecError(twhere + ".coeff: expected a number");
      p.add_term(exps, term.at("coeff").get<double>());
    }
    coeffs.emplace(std::move(key), std::move(p));
  }
  return MetricSpec(n, m, std::move(coeffs));
}

MetricSpec spec_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("parse error: ") + e.what());
  }
  return spec_from_json(doc);
}

MetricSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return spec_from_string(buf.str());
}

nlohmann::ordered_json spec_to_json(const MetricSpec& spec) {
  nlohmann::ordered_json doc;
  doc["dimension"] = spec.dimension();
  doc["degree"] = spec.degree();
  doc["coefficients"] = nlohmann::ordered_json::array();
  for (const auto& [index, poly] : spec.coefficients()) {
    nlohmann::ordered_json entry;
    std::vector<int> one_based = index.entries();
    for (int& i : one_based) ++i;
    entry["index"] = one_based;
    entry["poly"] = nlohmann::ordered_json::array();
    for (const auto& [exps, c] : poly.terms()) {
      nlohmann::ordered_json term;
      term["exp"] = exps;
      term["coeff"] = c;
      entry["poly"].push_back(term);
    }
    doc["coefficients"].push_back(entry);
  }
  return doc;
}

}  // namespace mroot
