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

#ifndef GLOVE_QUAT_HPP_
#define GLOVE_QUAT_HPP_

#include <cmath>

namespace glove {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
  friend constexpr Vec3 operator*(Vec3 v, double s) { return s * v; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

/// Rotation quaternion, Hamilton convention, scalar first.
///
/// Orientation quaternions map body-frame vectors into the world frame. Both
/// q and -q denote the same rotation, so compare rotations with
/// angular_distance() rather than componentwise.
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Quaternion identity() { return {}; }

  constexpr Vec3 vec() const { return {x, y, z}; }
  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

inline double norm(const Quaternion& q) { return std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z); }
constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Quaternion conjugate(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double kDegToRad = 0.017453292519943295;
constexpr double kRadToDeg = 57.29577951308232;

/// Throws DegenerateQuaternion on a zero-norm input.
Quaternion normalize(const Quaternion& q);

/// Hamilton product. The result applies b first, then a: R(a*b) = R(a) R(b).
Quaternion multiply(const Quaternion& a, const Quaternion& b);
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return multiply(a, b); }

/// Unit quaternion for a rotation of `angle_deg` about `axis` (need not be
/// unit). A zero axis is accepted only together with a zero angle.
Quaternion from_axis_angle(Vec3 axis, double angle_deg);

/// Smallest rotation angle taking a onto b, in degrees within [0, 180].
double angular_distance(const Quaternion& a, const Quaternion& b);

/// Rotates v by q (body to world for orientation quaternions).
Vec3 rotate(const Quaternion& q, Vec3 v);

/// Exponential map of a rotation vector in radians.
Quaternion exp_map(Vec3 rotation_vector_rad);

/// Rotation vector (radians) of q, taking the short way round.
Vec3 log_map(const Quaternion& q);

/// Propagates q by a body-frame angular rate held constant over dt:
/// q * exp(omega * dt / 2). omega in deg/s, dt in seconds.
Quaternion integrate_gyro(const Quaternion& q, Vec3 omega_dps, double dt_s);

}  // namespace glove

#endif  // GLOVE_QUAT_HPP_
