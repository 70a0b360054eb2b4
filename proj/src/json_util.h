// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSM_SRC_JSON_UTIL_H_
#define PSM_SRC_JSON_UTIL_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "psm/types.h"

namespace psm {

// Typed accessors that report schema problems as ConfigError.

inline void RequireObject(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
}

inline void CheckKeys(const nlohmann::json& j,
                      std::initializer_list<const char*> allowed,
                      const std::string& what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) throw ConfigError("unknown key '" + it.key() + "' in " + what);
  }
}

inline const nlohmann::json& Get(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing key '") + key + "'");
  return *it;
}

inline int64_t AsInt64(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_integer()) return v.get<int64_t>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9.0e15) {
      return static_cast<int64_t>(d);
    }
  }
  throw ConfigError(what + " must be an integer");
}

inline int AsInt(const nlohmann::json& v, const std::string& what) {
  int64_t x = AsInt64(v, what);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError(what + " is out of range");
  }
  return static_cast<int>(x);
}

inline double AsDouble(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

inline int GetInt(const nlohmann::json& j, const char* key) {
  return AsInt(Get(j, key), std::string("'") + key + "'");
}

inline uint64_t GetUint64(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = Get(j, key);
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  int64_t x = AsInt64(v, std::string("'") + key + "'");
  if (x < 0) throw ConfigError(std::string("'") + key + "' must be >= 0");
  return static_cast<uint64_t>(x);
}

inline double GetDouble(const nlohmann::json& j, const char* key) {
  return AsDouble(Get(j, key), std::string("'") + key + "'");
}

inline std::string GetString(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = Get(j, key);
  if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<int> AsIntList(const nlohmann::json& v,
                                  const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(AsInt(x, what + " entry"));
  return out;
}

inline std::vector<int> GetIntList(const nlohmann::json& j, const char* key) {
  return AsIntList(Get(j, key), std::string("'") + key + "'");
}

inline std::vector<std::vector<int>> GetIntLists(const nlohmann::json& j,
                                                 const char* key) {
  const nlohmann::json& v = Get(j, key);
  const std::string what = std::string("'") + key + "'";
  if (!v.is_array()) throw ConfigError(what + " must be an array of arrays");
  std::vector<std::vector<int>> out;
  out.reserve(v.size());
  for (const auto& row : v) out.push_back(AsIntList(row, what + " row"));
  return out;
}

inline std::vector<double> GetDoubleList(const nlohmann::json& j,
                                         const char* key) {
  const nlohmann::json& v = Get(j, key);
  const std::string what = std::string("'") + key + "'";
  if (!v.is_array()) throw ConfigError(what + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(AsDouble(x, what + " entry"));
  return out;
}

}  // namespace psm

#endif  // PSM_SRC_JSON_UTIL_H_
