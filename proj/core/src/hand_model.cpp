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

#include "glove/hand_model.hpp"

#include <algorithm>
#include <cmath>

#include "glove/errors.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace glove::hand {

namespace {

constexpr double kSqrtHalf = 0.7071067811865476;

double clamp_flexion(double angle, bool& clamped) {
  const double c = std::clamp(angle, kMinFlexionDeg, kMaxFlexionDeg);
  clamped = c != angle;
  return c;
}

}  // namespace

Vec3 flexion_axis(Finger f, Handedness h) {
  if (f != Finger::kThumb) return {1.0, 0.0, 0.0};
  return {kSqrtHalf, h == Handedness::kRight ? kSqrtHalf : -kSqrtHalf, 0.0};
}

Quaternion relative_orientation(const Quaternion& parent, const Quaternion& child) {
  return multiply(conjugate(parent), child);
}

double flexion_angle(const Quaternion& rel, Vec3 axis) {
  const Quaternion q = rel.w < 0.0 ? -rel : rel;
  return 2.0 * std::atan2(dot(q.vec(), axis), q.w) * kRadToDeg;
}

HandPose compute_pose(const std::map<int, Quaternion>& orientations, const SensorTopology& t) {
  const SensorEntry* back = t.find(SegmentLabel::back());
  if (back == nullptr || !orientations.contains(back->sensor_id)) {
    throw MissingReference("no hand-back orientation");
  }
  HandPose pose;
  for (const auto& e : t.sensors) {
    if (auto it = orientations.find(e.sensor_id); it != orientations.end()) {
      pose.segments.emplace_back(e.segment, it->second);
    }
  }
  const Quaternion hb = orientations.at(back->sensor_id);
  for (Finger f : kFingers) {
    const SensorEntry* prox = t.find(SegmentLabel::phalanx_of(f, Phalanx::kProximal));
    const SensorEntry* inter = t.find(SegmentLabel::phalanx_of(f, Phalanx::kIntermediate));
    if (prox == nullptr && inter == nullptr) continue;  // not instrumented
    std::vector<int> missing;
    for (const SensorEntry* e : {prox, inter}) {
      if (e != nullptr && !orientations.contains(e->sensor_id)) missing.push_back(e->sensor_id);
    }
    if (prox == nullptr || inter == nullptr || !missing.empty()) {
      std::string msg = std::string(to_string(f)) + ": omitted, missing sensor";
      for (int id : missing) msg += " " + std::to_string(id);
      if (prox == nullptr || inter == nullptr) msg += " (segment not in topology)";
      pose.warnings.push_back(std::move(msg));
      continue;
    }
    const Quaternion qp = orientations.at(prox->sensor_id);
    const Quaternion qi = orientations.at(inter->sensor_id);
    const Vec3 axis = flexion_axis(f, t.handedness);
    FingerJoints j;
    j.mcp_deg = clamp_flexion(flexion_angle(relative_orientation(hb, qp), axis), j.mcp_clamped);
    j.pip_deg = clamp_flexion(flexion_angle(relative_orientation(qp, qi), axis), j.pip_clamped);
    pose.fingers[f] = j;
  }
  return pose;
}

HandPose compute_pose(const wire::SensorPacket& packet, const SensorTopology& t) {
  std::map<int, Quaternion> orientations;
  for (const auto& s : packet.samples) orientations[s.sensor_id] = s.orientation;
  return compute_pose(orientations, t);
}

std::map<int, Quaternion> forward_pose(const Quaternion& hand_back, const std::map<Finger, FingerJoints>& joints,
                                       const SensorTopology& t) {
  std::map<int, Quaternion> out;
  for (const auto& e : t.sensors) {
    if (e.segment.hand_back) {
      out[e.sensor_id] = hand_back;
      continue;
    }
    FingerJoints j;
    if (auto it = joints.find(e.segment.finger); it != joints.end()) j = it->second;
    const Vec3 axis = flexion_axis(e.segment.finger, t.handedness);
    Quaternion q = multiply(hand_back, from_axis_angle(axis, j.mcp_deg));
    if (e.segment.phalanx == Phalanx::kIntermediate) q = multiply(q, from_axis_angle(axis, j.pip_deg));
    out[e.sensor_id] = q;
  }
  return out;
}

std::string to_json_line(const HandPose& pose, double t_ms, std::uint32_t sequence) {
  nlohmann::json segments = nlohmann::json::object();
  for (const auto& [label, q] : pose.segments) segments[to_string(label)] = detail::quat_to_json(q);
  nlohmann::json fingers = nlohmann::json::object();
  for (const auto& [f, j] : pose.fingers) {
    fingers[std::string(to_string(f))] = {{"mcp_deg", j.mcp_deg},
                                          {"pip_deg", j.pip_deg},
                                          {"mcp_clamped", j.mcp_clamped},
                                          {"pip_clamped", j.pip_clamped}};
  }
  nlohmann::json rec = {{"t_ms", t_ms},
                        {"seq", sequence},
                        {"segments", segments},
                        {"fingers", fingers},
                        {"warnings", pose.warnings}};
  return rec.dump();
}

}  // namespace glove::hand
