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

#ifndef GLOVE_HAND_MODEL_HPP_
#define GLOVE_HAND_MODEL_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "glove/quat.hpp"
#include "glove/topology.hpp"
#include "glove/wire.hpp"

namespace glove::hand {

/// Anatomical flexion range; values outside are clamped and flagged.
inline constexpr double kMinFlexionDeg = -30.0;
inline constexpr double kMaxFlexionDeg = 135.0;

struct FingerJoints {
  double mcp_deg = 0.0;
  double pip_deg = 0.0;
  bool mcp_clamped = false;
  bool pip_clamped = false;
};

struct HandPose {
  std::vector<std::pair<SegmentLabel, Quaternion>> segments;
  std::map<Finger, FingerJoints> fingers;
  /// Fingers left out because a sensor was absent, one message each.
  std::vector<std::string> warnings;
};

/// Flexion axis of a finger, expressed in the hand-back frame at the
/// calibration pose (flat hand, fingers extended). +X for the four fingers;
/// the thumb axis is +X turned 45 degrees about +Z, mirrored for a left hand.
Vec3 flexion_axis(Finger f, Handedness h);

/// parent^-1 * child: the child orientation expressed in the parent frame.
Quaternion relative_orientation(const Quaternion& parent, const Quaternion& child);

/// Signed rotation of rel about `axis` in degrees, (-180, 180]. Uses the
/// twist component of a swing-twist split so rotation about other axes is
/// discarded.
double flexion_angle(const Quaternion& rel, Vec3 axis);

/// MCP flexion is the proximal phalanx relative to the hand back, PIP is the
/// intermediate relative to the proximal. Throws MissingReference without a
/// hand-back orientation.
HandPose compute_pose(const std::map<int, Quaternion>& orientations, const SensorTopology& t);
HandPose compute_pose(const wire::SensorPacket& packet, const SensorTopology& t);

/// Orientations of every topology segment for given joint angles and
/// hand-back orientation; the inverse of compute_pose.
std::map<int, Quaternion> forward_pose(const Quaternion& hand_back,
                                       const std::map<Finger, FingerJoints>& joints,
                                       const SensorTopology& t);

/// One JSON Lines record for the pose recorder.
std::string to_json_line(const HandPose& pose, double t_ms, std::uint32_t sequence);

}  // namespace glove::hand

#endif  // GLOVE_HAND_MODEL_HPP_
