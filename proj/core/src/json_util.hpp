// Copyright 2026 The Glove Twin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Private JSON helpers shared by the config-reading modules.

#ifndef GLOVE_SRC_JSON_UTIL_HPP_
#define GLOVE_SRC_JSON_UTIL_HPP_

#include <string>
#include <string_view>

#include "glove/errors.hpp"
#include "glove/quat.hpp"
#include "glove/topology.hpp"
#include "json.hpp"

namespace glove::detail {

inline nlohmann::json parse_document(std::string_view text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(what + ": parse error: " + e.what());
  }
}

template <typename T>
T require(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

template <typename T>
T optional(const nlohmann::json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return require<T>(j, key, where);
}

inline Vec3 vec3_from(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(where + ": expected [x, y, z]");
  try {
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + ": expected numbers");
  }
}

inline nlohmann::json quat_to_json(const Quaternion& q) { return nlohmann::json::array({q.w, q.x, q.y, q.z}); }

SensorTopology topology_from_json(const nlohmann::json& j);
nlohmann::json topology_to_json(const SensorTopology& t);

}  // namespace glove::detail

#endif  // GLOVE_SRC_JSON_UTIL_HPP_
