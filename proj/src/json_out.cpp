#include "pst/json_out.hpp"

#include <cmath>
#include <cstdio>

namespace pst {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void emit(const nlohmann::ordered_json& v, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<size_t>(indent) * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<size_t>(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (v.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (v.empty()) { out += "{}"; return; }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) { out += ","; out += nl; }
        first = false;
        out += pad;
        out += nlohmann::ordered_json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        emit(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close;
      out += "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (v.empty()) { out += "[]"; return; }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& e : v) scalars = scalars && !e.is_structured();
      out += "[";
      if (!scalars) out += nl;
      bool first = true;
      for (const auto& e : v) {
        if (!first) { out += scalars ? ", " : ","; if (!scalars) out += nl; }
        first = false;
        if (!scalars) out += pad;
        emit(e, indent, depth + 1, out);
      }
      if (!scalars) { out += nl; out += close; }
      out += "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& value, int indent) {
  std::string out;
  emit(value, indent, 0, out);
  return out;
}

}  // namespace pst
