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

#include "glove/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "glove/imu_model.hpp"

namespace glove::sim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Joints swing over [0, 60] deg around a half-flexed hand.
constexpr double kJointCenter = 30.0;



constexpr Vec3 kX{1.0, 0.0, 0.0};
constexpr Vec3 kY{0.0, 1.0, 0.0};
constexpr Vec3 kZ{0.0, 0.0, 1.0};

std::size_t finger_index(Finger f) { return static_cast<std::size_t>(f); }

}  // namespace

std::string TrajectorySpec::describe() const {
  switch (kind) {
    case TrajectoryKind::kStaticPose:
      return "static_pose(mcp=" + std::to_string(mcp_deg) + ",pip=" + std::to_string(pip_deg) + ")";
    case TrajectoryKind::kScriptedFlexion:
      return "scripted_flexion(amplitude=" + std::to_string(amplitude_deg) + ",period=" + std::to_string(period_s) +
             ")";
    case TrajectoryKind::kRandomMotion:
      return "random_motion(seed=" + std::to_string(seed) + ",bound=" + std::to_string(rate_bound_dps) + ")";
  }
  return "?";
}

double Trajectory::Angle::at(double t_s) const {
  double v = center;
  for (std::size_t k = 0; k < amp.size(); ++k) v += amp[k] * std::sin(kTwoPi * freq[k] * t_s + phase[k]);
  return v;
}

double Trajectory::Angle::max_rate() const {
  double r = 0.0;
  for (std::size_t k = 0; k < amp.size(); ++k) r += std::abs(amp[k]) * kTwoPi * freq[k];
  return r;
}

Trajectory::Trajectory(const TrajectorySpec& spec, Handedness handedness) : spec_(spec), handedness_(handedness) {
  if (spec.kind == TrajectoryKind::kScriptedFlexion) {
    // Two joints in series, each peaking at amplitude * pi / period deg/s.
    rate_bound_ = 2.0 * std::abs(spec.amplitude_deg) * std::numbers::pi / spec.period_s;
  } else if (spec.kind == TrajectoryKind::kRandomMotion) {
    build_random(spec.seed, spec.rate_bound_dps);
  }
}

// Band-limited motion: every joint angle is a sum of three sinusoids with
// random frequency and phase. The hand back wanders in heading and tilts
// within about 30 degrees; fingers flex over most of their range. All
// frequencies are then scaled so that the summed joint rates along the
// longest chain (three hand angles, MCP, PIP) stay within the bound.
void Trajectory::build_random(std::uint64_t seed, double bound) {
  std::mt19937_64 rng(imu::mix_seed(seed, 0x7261));
  std::uniform_real_distribution<double> freq(0.02, 0.25);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  auto make = [&](double center, double range) {
    Angle a;
    a.center = center;
    std::array<double, 3> w{};
    for (auto& x : w) x = weight(rng);
    const double total = w[0] + w[1] + w[2];
    for (std::size_t k = 0; k < 3; ++k) {
      a.amp[k] = range * w[k] / total;
      a.freq[k] = freq(rng);
      a.phase[k] = phase(rng);
    }
    return a;
  };
  yaw_ = make(0.0, 60.0);
  pitch_ = make(0.0, 30.0);
  roll_ = make(0.0, 30.0);
  for (std::size_t f = 0; f < 5; ++f) {
    mcp_[f] = make(kJointCenter, kJointCenter);
    pip_[f] = make(kJointCenter, kJointCenter);
  }
  double finger_chain = 0.0;
  for (std::size_t f = 0; f < 5; ++f) finger_chain = std::max(finger_chain, mcp_[f].max_rate() + pip_[f].max_rate());
  const double chain = yaw_.max_rate() + pitch_.max_rate() + roll_.max_rate() + finger_chain;
  const double scale = chain > bound ? bound / chain : 1.0;
  auto rescale = [scale](Angle& a) {
    for (auto& f : a.freq) f *= scale;
  };
  rescale(yaw_);
  rescale(pitch_);
  rescale(roll_);
  for (std::size_t f = 0; f < 5; ++f) {
    rescale(mcp_[f]);
    rescale(pip_[f]);
  }
  rate_bound_ = chain * scale;
}

Quaternion Trajectory::hand_back(double t_s) const {
  switch (spec_.kind) {
    case TrajectoryKind::kStaticPose:
      return spec_.hand_back;
    case TrajectoryKind::kScriptedFlexion:
      return Quaternion::identity();
    case TrajectoryKind::kRandomMotion:
      return multiply(multiply(from_axis_angle(kZ, yaw_.at(t_s)), from_axis_angle(kX, pitch_.at(t_s))),
                      from_axis_angle(kY, roll_.at(t_s)));
  }
  return Quaternion::identity();
}

std::map<Finger, hand::FingerJoints> Trajectory::joints(double t_s) const {
  std::map<Finger, hand::FingerJoints> out;
  for (Finger f : kFingers) {
    hand::FingerJoints j;
    switch (spec_.kind) {
      case TrajectoryKind::kStaticPose:
        j.mcp_deg = spec_.mcp_deg;
        j.pip_deg = spec_.pip_deg;
        break;
      case TrajectoryKind::kScriptedFlexion: {
        const double a = spec_.amplitude_deg * 0.5 * (1.0 - std::cos(kTwoPi * t_s / spec_.period_s));
        j.mcp_deg = a;
        j.pip_deg = a;
        break;
      }
      case TrajectoryKind::kRandomMotion:
        j.mcp_deg = mcp_[finger_index(f)].at(t_s);
        j.pip_deg = pip_[finger_index(f)].at(t_s);
        break;
    }
    out[f] = j;
  }
  return out;
}

Quaternion Trajectory::orientation(const SegmentLabel& segment, double t_s) const {
  const Quaternion hb = hand_back(t_s);
  if (segment.hand_back) return hb;
  double mcp = 0.0;
  double pip = 0.0;
  switch (spec_.kind) {
    case TrajectoryKind::kStaticPose:
      mcp = spec_.mcp_deg;
      pip = spec_.pip_deg;
      break;
    case TrajectoryKind::kScriptedFlexion:
      mcp = pip = spec_.amplitude_deg * 0.5 * (1.0 - std::cos(kTwoPi * t_s / spec_.period_s));
      break;
    case TrajectoryKind::kRandomMotion:
      mcp = mcp_[finger_index(segment.finger)].at(t_s);
      pip = pip_[finger_index(segment.finger)].at(t_s);
      break;
  }
  const Vec3 axis = hand::flexion_axis(segment.finger, handedness_);
  Quaternion q = multiply(hb, from_axis_angle(axis, mcp));
  if (segment.phalanx == Phalanx::kIntermediate) q = multiply(q, from_axis_angle(axis, pip));
  return q;
}

}  // namespace glove::sim
