#pragma once

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "detour/errors.hpp"

namespace detour {

using json = nlohmann::json;

namespace detail {

// Reject keys outside `allowed`; documents are strict so typos surface early.
inline void require_only_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                              const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError(where + ": unknown key '" + key + "'");
    }
  }
}

inline const json& require_key(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing key '" + key + "'");
  return *it;
}

inline std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_string()) throw SchemaError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

inline double require_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_number()) throw SchemaError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

inline json parse_document(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail
}  // namespace detour
