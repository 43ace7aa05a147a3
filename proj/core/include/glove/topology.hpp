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

#ifndef GLOVE_TOPOLOGY_HPP_
#define GLOVE_TOPOLOGY_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glove {

inline constexpr int kLaneCount = 6;
inline constexpr int kSensorsPerLane = 2;
inline constexpr int kMaxSensorId = 254;

enum class Finger { kThumb, kIndex, kMiddle, kRing, kLittle };
enum class Phalanx { kProximal, kIntermediate };
enum class Address { kA, kB };
enum class Handedness { kRight, kLeft };

inline constexpr std::array<Finger, 5> kFingers = {Finger::kThumb, Finger::kIndex, Finger::kMiddle,
                                                   Finger::kRing, Finger::kLittle};

/// Body segment carrying a sensor: the back of the hand, or one phalanx.
struct SegmentLabel {
  bool hand_back = true;
  Finger finger = Finger::kThumb;
  Phalanx phalanx = Phalanx::kProximal;

  static constexpr SegmentLabel back() { return {}; }
  static constexpr SegmentLabel phalanx_of(Finger f, Phalanx p) { return {false, f, p}; }

  friend bool operator==(const SegmentLabel& a, const SegmentLabel& b) {
    return a.hand_back == b.hand_back && (a.hand_back || (a.finger == b.finger && a.phalanx == b.phalanx));
  }
};

std::string_view to_string(Finger f);
std::string_view to_string(Address a);
std::string_view to_string(Handedness h);
/// "hand_back" or "<finger>/<phalanx>", e.g. "index/proximal".
std::string to_string(const SegmentLabel& s);

std::optional<Finger> parse_finger(std::string_view s);
std::optional<SegmentLabel> parse_segment(std::string_view s);

struct SensorEntry {
  int sensor_id = 0;
  int lane = 0;
  Address address = Address::kA;
  SegmentLabel segment;
};

/// Which sensor sits where: I2C lane, address on that lane, and hand segment.
struct SensorTopology {
  Handedness handedness = Handedness::kRight;
  std::vector<SensorEntry> sensors;

  const SensorEntry* find(int sensor_id) const;
  const SensorEntry* find(const SegmentLabel& segment) const;

  /// Sensors in multiplexer polling order: lane 0..5, address A before B.
  std::vector<SensorEntry> read_order() const;
};

/// Eleven sensors: id 0 on the hand back (lane 0, address A), then one lane
/// per finger (thumb = lane 1 ... little = lane 5) with the proximal phalanx
/// at address A and the intermediate at address B, ids 1..10 in that order.
SensorTopology default_topology(Handedness handedness = Handedness::kRight);

/// Every invariant violation found; empty means valid.
std::vector<std::string> validate(const SensorTopology& t);

/// Parses the topology JSON document and validates it.
/// Throws ConfigError on malformed input and TopologyInvalid on violations.
SensorTopology load_topology(std::string_view text);

std::string serialize_topology(const SensorTopology& t);

}  // namespace glove

#endif  // GLOVE_TOPOLOGY_HPP_
