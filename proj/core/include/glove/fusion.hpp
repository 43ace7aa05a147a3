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

#ifndef GLOVE_FUSION_HPP_
#define GLOVE_FUSION_HPP_

#include "glove/quat.hpp"

namespace glove::fusion {

inline constexpr double kDefaultAlpha = 0.05;  // 1/s
/// Accelerometer gating window around 1 g; outside it no tilt correction.
inline constexpr double kAccelGate = 0.1;
inline constexpr double kStaticMin = 0.5;
inline constexpr double kStaticMax = 1.5;

/// Six-axis complementary filter state. The gyro propagates q; the
/// accelerometer pulls the tilt toward gravity at rate alpha. Heading is
/// unobservable and drifts with gyro bias.
struct FilterState {
  Quaternion q;  // body to world
  double alpha = kDefaultAlpha;
  bool initialized = false;
};

/// Level attitude from a static accelerometer reading: the shortest rotation
/// taking the measured gravity direction onto world +Z. A reading of
/// (0, 0, -1) resolves to a half turn about +X.
/// Throws NotStatic when |accel| is outside [0.5, 1.5] g.
FilterState init_from_accel(Vec3 accel_g, double alpha = kDefaultAlpha);

/// One predict/correct step. gyro in deg/s, accel in g, dt in seconds.
FilterState update(const FilterState& s, Vec3 gyro_dps, Vec3 accel_g, double dt_s);

/// Angle in degrees between world +Z and the measured accel direction
/// rotated into the world frame by q.
double tilt_error(const Quaternion& q, Vec3 accel_g);

}  // namespace glove::fusion

#endif  // GLOVE_FUSION_HPP_
