#include "mroot/json_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mroot {
namespace {

void indent(std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
}

void write_value(std::ostream& out, const nlohmann::ordered_json& v, int depth) {
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out << ",\n";
        first = false;
        indent(out, depth + 1);
        out << nlohmann::ordered_json(key).dump() << ": ";
        write_value(out, item, depth + 1);
      }
      out << "\n";
      indent(out, depth);
      out << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const auto& e) {
        return e.is_object() || e.is_array();
      });
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << (flat ? "[" : "[\n");
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << (flat ? ", " : ",\n");
        first = false;
        if (!flat) indent(out, depth + 1);
        write_value(out, item, depth + 1);
      }
      if (!flat) {
        out << "\n";
        indent(out, depth);
      }
      out << "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out << buf;
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& out, const nlohmann::ordered_json& doc) {
  write_value(out, doc, 0);
  out << "\n";
}

std::string to_json_text(const nlohmann::ordered_json& doc) {
  std::ostringstream s;
  write_json(s, doc);
  return s.str();
}

}  // namespace mroot
