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

#include "glove/topology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "glove/errors.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace glove {

using nlohmann::json;

std::string_view to_string(Finger f) {
  switch (f) {
    case Finger::kThumb: return "thumb";
    case Finger::kIndex: return "index";
    case Finger::kMiddle: return "middle";
    case Finger::kRing: return "ring";
    case Finger::kLittle: return "little";
  }
  return "?";
}

std::string_view to_string(Address a) { return a == Address::kA ? "A" : "B"; }

std::string_view to_string(Handedness h) { return h == Handedness::kRight ? "right" : "left"; }

std::string to_string(const SegmentLabel& s) {
  if (s.hand_back) return "hand_back";
  std::string out(to_string(s.finger));
  out += s.phalanx == Phalanx::kProximal ? "/proximal" : "/intermediate";
  return out;
}

std::optional<Finger> parse_finger(std::string_view s) {
  for (Finger f : kFingers) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

std::optional<SegmentLabel> parse_segment(std::string_view s) {
  if (s == "hand_back") return SegmentLabel::back();
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  const auto finger = parse_finger(s.substr(0, slash));
  if (!finger) return std::nullopt;
  const auto phalanx = s.substr(slash + 1);
  if (phalanx == "proximal") return SegmentLabel::phalanx_of(*finger, Phalanx::kProximal);
  if (phalanx == "intermediate") return SegmentLabel::phalanx_of(*finger, Phalanx::kIntermediate);
  return std::nullopt;
}

const SensorEntry* SensorTopology::find(int sensor_id) const {
  for (const auto& e : sensors) {
    if (e.sensor_id == sensor_id) return &e;
  }
  return nullptr;
}

const SensorEntry* SensorTopology::find(const SegmentLabel& segment) const {
  for (const auto& e : sensors) {
    if (e.segment == segment) return &e;
  }
  return nullptr;
}

std::vector<SensorEntry> SensorTopology::read_order() const {
  std::vector<SensorEntry> out = sensors;
  std::stable_sort(out.begin(), out.end(), [](const SensorEntry& a, const SensorEntry& b) {
    if (a.lane != b.lane) return a.lane < b.lane;
    return a.address < b.address;
  });
  return out;
}

SensorTopology default_topology(Handedness handedness) {
  SensorTopology t;
  t.handedness = handedness;
  t.sensors.push_back({0, 0, Address::kA, SegmentLabel::back()});
  int id = 1;
  int lane = 1;
  for (Finger f : kFingers) {
    t.sensors.push_back({id++, lane, Address::kA, SegmentLabel::phalanx_of(f, Phalanx::kProximal)});
    t.sensors.push_back({id++, lane, Address::kB, SegmentLabel::phalanx_of(f, Phalanx::kIntermediate)});
    ++lane;
  }
  return t;
}

std::vector<std::string> validate(const SensorTopology& t) {
  std::vector<std::string> out;
  std::map<int, int> per_lane;
  std::set<int> ids;
  std::set<std::pair<int, Address>> slots;
  std::set<std::string> segments;
  for (const auto& e : t.sensors) {
    const std::string who = "sensor " + std::to_string(e.sensor_id);
    if (e.sensor_id < 0 || e.sensor_id > kMaxSensorId) {
      out.push_back(who + ": id out of range 0-" + std::to_string(kMaxSensorId));
    }
    if (!ids.insert(e.sensor_id).second) out.push_back(who + ": duplicate id");
    if (e.lane < 0 || e.lane >= kLaneCount) {
      out.push_back(who + ": lane out of range (" + std::to_string(e.lane) + " not in 0-5)");
      continue;
    }
    ++per_lane[e.lane];
    if (!slots.insert({e.lane, e.address}).second) {
      out.push_back(who + ": duplicate address " + std::string(to_string(e.address)) + " on lane " +
                    std::to_string(e.lane));
    }
    if (!segments.insert(to_string(e.segment)).second) {
      out.push_back(who + ": duplicate segment " + to_string(e.segment));
    }
  }
  for (const auto& [lane, count] : per_lane) {
    if (count > kSensorsPerLane) {
      out.push_back("lane " + std::to_string(lane) + " has " + std::to_string(count) + " > " +
                    std::to_string(kSensorsPerLane) + " sensors");
    }
  }
  return out;
}

namespace {

SensorEntry parse_entry(const json& j, std::size_t index) {
  const std::string where = "sensors[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ConfigError(where + ": expected object");
  SensorEntry e;
  e.sensor_id = detail::require<int>(j, "id", where);
  e.lane = detail::require<int>(j, "lane", where);
  const auto addr = detail::require<std::string>(j, "address", where);
  if (addr == "A") {
    e.address = Address::kA;
  } else if (addr == "B") {
    e.address = Address::kB;
  } else {
    throw ConfigError(where + ".address: expected \"A\" or \"B\", got \"" + addr + "\"");
  }
  const auto seg = detail::require<std::string>(j, "segment", where);
  const auto label = parse_segment(seg);
  if (!label) throw ConfigError(where + ".segment: unknown segment \"" + seg + "\"");
  e.segment = *label;
  return e;
}

}  // namespace

namespace detail {

SensorTopology topology_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("topology: expected object");
  const int version = require<int>(j, "version", "topology");
  if (version != 1) throw ConfigError("topology.version: unsupported version " + std::to_string(version));
  SensorTopology t;
  const auto hand = j.value("handedness", std::string("right"));
  if (hand == "right") {
    t.handedness = Handedness::kRight;
  } else if (hand == "left") {
    t.handedness = Handedness::kLeft;
  } else {
    throw ConfigError("topology.handedness: expected \"right\" or \"left\"");
  }
  if (!j.contains("sensors")) throw ConfigError("topology: missing field \"sensors\"");
  const auto& sensors = j.at("sensors");
  if (!sensors.is_array()) throw ConfigError("topology.sensors: expected array");
  for (std::size_t i = 0; i < sensors.size(); ++i) t.sensors.push_back(parse_entry(sensors[i], i));
  if (auto v = validate(t); !v.empty()) throw TopologyInvalid(std::move(v));
  return t;
}

json topology_to_json(const SensorTopology& t) {
  json sensors = json::array();
  for (const auto& e : t.sensors) {
    sensors.push_back({{"id", e.sensor_id},
                       {"lane", e.lane},
                       {"address", std::string(to_string(e.address))},
                       {"segment", to_string(e.segment)}});
  }
  return {{"version", 1}, {"handedness", std::string(to_string(t.handedness))}, {"sensors", sensors}};
}

}  // namespace detail

SensorTopology load_topology(std::string_view text) {
  return detail::topology_from_json(detail::parse_document(text, "topology"));
}

std::string serialize_topology(const SensorTopology& t) { return detail::topology_to_json(t).dump(2); }

}  // namespace glove
