#include "kwall/json_util.hpp"

#include <fstream>

#include "kwall/errors.hpp"

namespace kwall {

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    auto r = Rational::try_parse(j.get<std::string>());
    if (!r) throw InputError(where + ": malformed rational '" + j.get<std::string>() + "'");
    return *r;
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError(where + ": expected a rational string");
}

Vec vec_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  Vec v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], where + "/" + std::to_string(i)));
  return v;
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + "/" + key + ": missing field");
  return *it;
}

std::string string_field(const json& j, const std::string& key, const std::string& where) {
  const json& f = field(j, key, where);
  if (!f.is_string()) throw InputError(where + "/" + key + ": expected a string");
  return f.get<std::string>();
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace kwall
