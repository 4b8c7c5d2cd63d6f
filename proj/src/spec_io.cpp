#include <json.hpp>

#include "hfree/error.hpp"
#include "hfree/modules.hpp"

namespace hfree {

namespace {

std::vector<Poly> read_polys(const nlohmann::json& doc, const char* key, int n) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(Errc::bad_spec, std::string("spec needs an array \"") + key + "\"");
  }
  std::vector<Poly> out;
  std::size_t index = 0;
  for (const auto& item : doc[key]) {
    if (!item.is_string()) throw Error(Errc::bad_spec, std::string(key) + " entries must be strings");
    try {
      out.push_back(parse_poly(item.get<std::string>(), n));
    } catch (const ParseError& e) {
      throw ParseError(e.position(), std::string(key) + "[" + std::to_string(index) + "] " + e.what());
    }
    ++index;
  }
  return out;
}

}  // namespace

ModuleSpec parse_spec_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte == 0 ? 0 : e.byte - 1, std::string("malformed spec file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw Error(Errc::bad_spec, "spec needs an integer \"n\"");
  }
  const int n = doc["n"].get<int>();
  if (n < 1) throw Error(Errc::bad_spec, "rank n must be at least 1");
  ModuleSpec m;
  m.n = n;
  m.p = read_polys(doc, "p", n);
  m.q = read_polys(doc, "q", n);
  m.validate();
  return m;
}

std::string spec_to_json(const ModuleSpec& m) {
  nlohmann::json doc;
  doc["n"] = m.n;
  doc["p"] = nlohmann::json::array();
  doc["q"] = nlohmann::json::array();
  for (const auto& f : m.p) doc["p"].push_back(f.str());
  for (const auto& f : m.q) doc["q"].push_back(f.str());
  return doc.dump();
}

}  // namespace hfree
