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

#ifndef GLOVE_TRAJECTORY_HPP_
#define GLOVE_TRAJECTORY_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glove/hand_model.hpp"
#include "glove/quat.hpp"
#include "glove/topology.hpp"

namespace glove::sim {

enum class TrajectoryKind { kStaticPose, kScriptedFlexion, kRandomMotion };

struct TrajectorySpec {
  TrajectoryKind kind = TrajectoryKind::kStaticPose;

  // static_pose
  Quaternion hand_back;
  double mcp_deg = 0.0;
  double pip_deg = 0.0;

  // scripted_flexion: every joint follows amplitude * (1 - cos(2 pi t / period)) / 2
  double amplitude_deg = 90.0;
  double period_s = 4.0;

  // random_motion
  double rate_bound_dps = 90.0;
  std::uint64_t seed = 0;

  std::string describe() const;
};

/// Ground-truth motion of every hand segment. Segments rotate about the
/// sensor origin, so linear acceleration is zero; orientations follow the
/// hand kinematic chain (hand back, then MCP and PIP flexion).
class Trajectory {
 public:
  Trajectory(const TrajectorySpec& spec, Handedness handedness);

  Quaternion orientation(const SegmentLabel& segment, double t_s) const;
  Vec3 linear_accel_world(const SegmentLabel&, double) const { return {}; }

  /// Joint angles at time t (hand back orientation aside).
  std::map<Finger, hand::FingerJoints> joints(double t_s) const;
  Quaternion hand_back(double t_s) const;

  /// Upper bound on |omega| of any segment, deg/s. Zero for static poses.
  double rate_bound() const { return rate_bound_; }

 private:
  // center + sum_k amp_k * sin(2 pi freq_k t + phase_k), degrees
  struct Angle {
    double center = 0.0;
    std::array<double, 3> amp{};
    std::array<double, 3> freq{};
    std::array<double, 3> phase{};

    double at(double t_s) const;
    double max_rate() const;
  };

  void build_random(std::uint64_t seed, double bound);

  TrajectorySpec spec_;
  Handedness handedness_;
  double rate_bound_ = 0.0;
  Angle yaw_, pitch_, roll_;
  std::array<Angle, 5> mcp_, pip_;
};

}  // namespace glove::sim

#endif  // GLOVE_TRAJECTORY_HPP_
