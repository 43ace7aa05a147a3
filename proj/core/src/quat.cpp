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

#include "glove/quat.hpp"

#include <algorithm>

#include "glove/errors.hpp"

namespace glove {

Quaternion normalize(const Quaternion& q) {
  const double n = norm(q);
  if (!(n > 0.0) || !std::isfinite(n)) throw DegenerateQuaternion();
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

Quaternion multiply(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion from_axis_angle(Vec3 axis, double angle_deg) {
  const double n = norm(axis);
  if (!(n > 0.0)) {
    if (angle_deg == 0.0) return Quaternion::identity();
    throw DegenerateAxis();
  }
  const double half = 0.5 * angle_deg * kDegToRad;
  const double s = std::sin(half) / n;
  return {std::cos(half), axis.x * s, axis.y * s, axis.z * s};
}

double angular_distance(const Quaternion& a, const Quaternion& b) {
  // 2*acos(|a.b|) evaluated through atan2 so that sub-microdegree errors
  // survive rounding of the dot product near 1.
  const Quaternion d = multiply(conjugate(a), b);
  const double v = norm(d.vec());
  return 2.0 * std::atan2(v, std::abs(d.w)) * kRadToDeg;
}

Vec3 rotate(const Quaternion& q, Vec3 v) {
  // v + 2w(u x v) + 2u x (u x v)
  const Vec3 u = q.vec();
  const Vec3 t = 2.0 * cross(u, v);
  return v + q.w * t + cross(u, t);
}

Quaternion exp_map(Vec3 r) {
  const double angle = norm(r);
  const double half = 0.5 * angle;
  // sin(half)/angle, with the series used near zero.
  const double k = angle < 1e-8 ? 0.5 - angle * angle / 48.0 : std::sin(half) / angle;
  return {std::cos(half), k * r.x, k * r.y, k * r.z};
}

Vec3 log_map(const Quaternion& q) {
  Quaternion p = q.w < 0.0 ? -q : q;
  const double v = norm(p.vec());
  const double angle = 2.0 * std::atan2(v, p.w);
  const double k = v < 1e-12 ? 2.0 / std::max(p.w, 1e-300) : angle / v;
  return k * p.vec();
}

Quaternion integrate_gyro(const Quaternion& q, Vec3 omega_dps, double dt_s) {
  const Vec3 r = (kDegToRad * dt_s) * omega_dps;
  if (r == Vec3{}) return q;
  return normalize(multiply(q, exp_map(r)));
}

}  // namespace glove
