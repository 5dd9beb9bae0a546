#pragma once

#include <string>

#include "json.hpp"
#include "kwall/lattice.hpp"
#include "kwall/rational.hpp"

namespace kwall {

using json = nlohmann::json;

// Parsers report the offending location as a JSON pointer inside InputError.
Rational rational_from_json(const json& j, const std::string& where);
Vec vec_from_json(const json& j, const std::string& where);
const json& field(const json& j, const std::string& key, const std::string& where);
std::string string_field(const json& j, const std::string& key, const std::string& where);

json to_json(const Rational& r);
json to_json(const Vec& v);

json read_json_file(const std::string& path);

}  // namespace kwall
