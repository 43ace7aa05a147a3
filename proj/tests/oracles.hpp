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

// Reference implementations used only by tests. They go through rotation
// matrices or brute-force integration, never through the quaternion routines
// they check.

#ifndef GLOVE_TESTS_ORACLES_HPP_
#define GLOVE_TESTS_ORACLES_HPP_

#include <array>
#include <cmath>
#include <random>

#include "glove/quat.hpp"

namespace glove::oracle {

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 to_matrix(const Quaternion& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

/// Rotation angle of a rotation matrix, degrees.
inline double matrix_angle_deg(const Mat3& r) {
  // angle from the trace and the skew part, atan2 form for accuracy
  const double c = 0.5 * (r[0][0] + r[1][1] + r[2][2] - 1.0);
  const double sx = r[2][1] - r[1][2], sy = r[0][2] - r[2][0], sz = r[1][0] - r[0][1];
  const double s = 0.5 * std::sqrt(sx * sx + sy * sy + sz * sz);
  return std::atan2(s, c) * kRadToDeg;
}

/// Angle between two rotation matrices, degrees.
inline double matrix_distance_deg(const Mat3& a, const Mat3& b) { return matrix_angle_deg(matmul(transpose(a), b)); }

/// Shepperd's method.
inline Quaternion from_matrix(const Mat3& m) {
  const double tr = m[0][0] + m[1][1] + m[2][2];
  Quaternion q;
  if (tr > 0) {
    const double s = std::sqrt(tr + 1.0) * 2;
    q = {0.25 * s, (m[2][1] - m[1][2]) / s, (m[0][2] - m[2][0]) / s, (m[1][0] - m[0][1]) / s};
  } else if (m[0][0] > m[1][1] && m[0][0] > m[2][2]) {
    const double s = std::sqrt(1.0 + m[0][0] - m[1][1] - m[2][2]) * 2;
    q = {(m[2][1] - m[1][2]) / s, 0.25 * s, (m[0][1] + m[1][0]) / s, (m[0][2] + m[2][0]) / s};
  } else if (m[1][1] > m[2][2]) {
    const double s = std::sqrt(1.0 + m[1][1] - m[0][0] - m[2][2]) * 2;
    q = {(m[0][2] - m[2][0]) / s, (m[0][1] + m[1][0]) / s, 0.25 * s, (m[1][2] + m[2][1]) / s};
  } else {
    const double s = std::sqrt(1.0 + m[2][2] - m[0][0] - m[1][1]) * 2;
    q = {(m[1][0] - m[0][1]) / s, (m[0][2] + m[2][0]) / s, (m[1][2] + m[2][1]) / s, 0.25 * s};
  }
  return q;
}

inline Vec3 apply(const Mat3& r, Vec3 v) {
  return {r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z, r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
          r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z};
}

/// First-order integration of q' = q * (0, omega) / 2 in n substeps with
/// renormalisation after each one. omega in deg/s.
inline Quaternion euler_integrate(Quaternion q, Vec3 omega_dps, double dt, int substeps) {
  const double h = dt / substeps;
  const double wx = omega_dps.x * kDegToRad, wy = omega_dps.y * kDegToRad, wz = omega_dps.z * kDegToRad;
  for (int i = 0; i < substeps; ++i) {
    const double dw = 0.5 * h * (-q.x * wx - q.y * wy - q.z * wz);
    const double dx = 0.5 * h * (q.w * wx + q.y * wz - q.z * wy);
    const double dy = 0.5 * h * (q.w * wy - q.x * wz + q.z * wx);
    const double dz = 0.5 * h * (q.w * wz + q.x * wy - q.y * wx);
    q = {q.w + dw, q.x + dx, q.y + dy, q.z + dz};
    const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    q = {q.w / n, q.x / n, q.y / n, q.z / n};
  }
  return q;
}

/// Classical RK4 on q' = q * (0, omega) / 2 with constant omega, n substeps,
/// renormalising after each one. omega in deg/s.
inline Quaternion rk4_integrate(Quaternion q, Vec3 omega_dps, double dt, int substeps) {
  const double h = dt / substeps;
  const double wx = omega_dps.x * kDegToRad, wy = omega_dps.y * kDegToRad, wz = omega_dps.z * kDegToRad;
  auto f = [&](const Quaternion& p) -> Quaternion {
    return {0.5 * (-p.x * wx - p.y * wy - p.z * wz), 0.5 * (p.w * wx + p.y * wz - p.z * wy),
            0.5 * (p.w * wy - p.x * wz + p.z * wx), 0.5 * (p.w * wz + p.x * wy - p.y * wx)};
  };
  auto axpy = [](const Quaternion& a, double s, const Quaternion& b) -> Quaternion {
    return {a.w + s * b.w, a.x + s * b.x, a.y + s * b.y, a.z + s * b.z};
  };
  for (int i = 0; i < substeps; ++i) {
    const Quaternion k1 = f(q);
    const Quaternion k2 = f(axpy(q, 0.5 * h, k1));
    const Quaternion k3 = f(axpy(q, 0.5 * h, k2));
    const Quaternion k4 = f(axpy(q, h, k3));
    q = {q.w + h / 6 * (k1.w + 2 * k2.w + 2 * k3.w + k4.w), q.x + h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
         q.y + h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y), q.z + h / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z)};
    const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    q = {q.w / n, q.x / n, q.y / n, q.z / n};
  }
  return q;
}

/// Uniformly distributed random rotation (Shoemake).
inline Quaternion random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double u1 = u(rng), u2 = u(rng) * 2 * M_PI, u3 = u(rng) * 2 * M_PI;
  const double a = std::sqrt(1 - u1), b = std::sqrt(u1);
  return {a * std::sin(u2), a * std::cos(u2), b * std::sin(u3), b * std::cos(u3)};
}

inline Vec3 random_vec(std::mt19937_64& rng, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  const double x = u(rng), y = u(rng);
  return {x, y, u(rng)};
}

}  // namespace glove::oracle

#endif  // GLOVE_TESTS_ORACLES_HPP_
