// Internal nlohmann/json helpers. Not installed; public headers stay std-only.
#pragma once

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace prooflab::jsonio {

using json = nlohmann::json;

inline json parse_or_throw(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw std::runtime_error("malformed JSON in " + what);
  }
  return j;
}

inline std::string require_string(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw std::runtime_error(what + ": missing string field '" + key + "'");
  }
  return j[key].get<std::string>();
}

inline std::string get_string(const json& j, const char* key, const std::string& fallback = "") {
  if (j.contains(key) && j[key].is_string()) return j[key].get<std::string>();
  return fallback;
}

inline std::optional<std::string> opt_string(const json& j, const char* key) {
  if (j.contains(key) && j[key].is_string()) return j[key].get<std::string>();
  return std::nullopt;
}

// Serializes with invalid UTF-8 replaced instead of thrown; model output is
// untrusted bytes.
inline std::string dump_lossy(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace prooflab::jsonio
