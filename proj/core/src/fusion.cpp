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

#include "glove/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glove/errors.hpp"

namespace glove::fusion {

namespace {

constexpr Vec3 kUp{0.0, 0.0, 1.0};

// Rotation (world frame) taking unit vector v onto +Z by the shortest arc,
// scaled to `fraction` of the full angle.
Quaternion tilt_correction(Vec3 v, double fraction) {
  const Vec3 axis = cross(v, kUp);
  const double s = norm(axis);
  const double angle = std::atan2(s, dot(v, kUp));
  if (s < 1e-15) {
    if (dot(v, kUp) > 0.0) return Quaternion::identity();
    return exp_map(Vec3{fraction * angle, 0.0, 0.0});
  }
  return exp_map((fraction * angle / s) * axis);
}

}  // namespace

FilterState init_from_accel(Vec3 accel_g, double alpha) {
  const double n = norm(accel_g);
  if (!(n >= kStaticMin && n <= kStaticMax)) {
    throw NotStatic("accelerometer norm " + std::to_string(n) + " g is not a static reading");
  }
  FilterState s;
  s.alpha = std::clamp(alpha, 0.0, 1.0);
  s.q = tilt_correction((1.0 / n) * accel_g, 1.0);
  s.initialized = true;
  return s;
}

FilterState update(const FilterState& s, Vec3 gyro_dps, Vec3 accel_g, double dt_s) {
  FilterState out = s;
  out.q = integrate_gyro(s.q, gyro_dps, dt_s);
  const double n = norm(accel_g);
  if (std::abs(n - 1.0) <= kAccelGate) {
    const Vec3 v = rotate(out.q, (1.0 / n) * accel_g);
    const double fraction = std::min(1.0, s.alpha * dt_s);
    out.q = multiply(tilt_correction(v, fraction), out.q);
  }
  out.q = normalize(out.q);
  return out;
}

double tilt_error(const Quaternion& q, Vec3 accel_g) {
  const Vec3 v = rotate(q, accel_g);
  return std::atan2(norm(cross(v, kUp)), dot(v, kUp)) * kRadToDeg;
}

}  // namespace glove::fusion
