#include "pst/chain_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pst/error.hpp"
#include "pst/json_out.hpp"

namespace pst {

namespace {

std::vector<double> real_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw FormatError(std::string("missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& e : doc[key]) {
    if (!e.is_number()) throw FormatError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

ChainSpec chain_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("chain document must be an object");
  ChainSpec c;
  c.couplings = real_array(doc, "couplings");
  c.fields = real_array(doc, "fields");
  if (doc.contains("statistics")) {
    if (!doc["statistics"].is_string()) throw FormatError("'statistics' must be a string");
    const auto s = doc["statistics"].get<std::string>();
    if (s == "fermionic") c.statistics = Statistics::fermionic;
    else if (s == "bosonic") c.statistics = Statistics::bosonic;
    else throw FormatError("unknown statistics '" + s + "'");
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) throw FormatError("'n' must be an integer");
    if (doc["n"].get<long long>() != static_cast<long long>(c.fields.size()))
      throw FormatError("'n' does not match the number of fields");
  }
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return c;
}

ChainSpec read_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open chain file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return chain_from_json(ss.str());
}

std::string chain_to_json(const ChainSpec& chain) {
  nlohmann::ordered_json doc;
  doc["n"] = chain.n();
  doc["couplings"] = chain.couplings;
  doc["fields"] = chain.fields;
  doc["statistics"] = chain.statistics == Statistics::bosonic ? "bosonic" : "fermionic";
  return dump_json(doc) + "\n";
}

}  // namespace pst
