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

#ifndef GLOVE_IMU_MODEL_HPP_
#define GLOVE_IMU_MODEL_HPP_

#include <cstdint>
#include <random>

#include "glove/fusion.hpp"
#include "glove/quat.hpp"

namespace glove::imu {

/// Stochastic error model of one accelerometer/gyroscope pair.
struct NoiseModel {
  Vec3 gyro_bias0;                 // deg/s, initial constant bias
  double gyro_bias0_range = 0.0;   // deg/s, extra per-axis U(-r, r) drawn per sensor
  double gyro_rw_sigma = 0.0;      // deg/s/sqrt(s), bias random-walk density
  double gyro_white_sigma = 0.0;   // deg/s per sample
  double accel_white_sigma = 0.0;  // g per sample
  std::uint64_t seed = 0;

  /// Order-of-magnitude consumer MEMS values.
  static NoiseModel mpu9250_default(std::uint64_t seed = 0);
  /// Noise-free sensor with a constant heading-axis bias (deg/s).
  static NoiseModel yaw_bias_only(double bias_dps, std::uint64_t seed = 0);
  /// Heading bias that yields 8.91 deg RMSE over a 30 min static session.
  static NoiseModel calibrated(std::uint64_t seed = 0);

  bool valid() const;
};

/// 8.91 * sqrt(3) / 1800 deg/s: a linear drift b*t has RMSE b*T/sqrt(3) on [0, T].
inline constexpr double kCalibratedYawBias = 8.91 * 1.7320508075688772 / 1800.0;

inline constexpr Vec3 kGravityWorld{0.0, 0.0, 1.0};  // g, +Z up, specific force at rest

/// Mutable state of one simulated sensor. Owned by a single simulation
/// context.
struct ImuState {
  Vec3 gyro_bias;
  std::mt19937_64 rng;
  fusion::FilterState filter;
};

/// Fresh sensor state: bias drawn from the model's bias0 and bias0_range,
/// random stream seeded from (model seed, stream).
ImuState make_state(const NoiseModel& noise, std::uint64_t stream, double alpha = fusion::kDefaultAlpha);

struct Truth {
  Quaternion orientation;   // body to world
  Vec3 omega_body;          // deg/s
  Vec3 linear_accel_world;  // g
};

struct Reading {
  Vec3 gyro;   // deg/s
  Vec3 accel;  // g
};

/// Advances the bias random walk by dt and returns a noisy reading of truth.
Reading sample(ImuState& state, const Truth& truth, const NoiseModel& noise, double dt_s);

/// Runs the sensor's onboard attitude filter on a reading and returns the
/// orientation it reports. The filter initialises from the first static
/// reading; until then identity is reported.
Quaternion onboard_orientation(ImuState& state, const Reading& reading, double dt_s);

/// SplitMix64 finaliser, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace glove::imu

#endif  // GLOVE_IMU_MODEL_HPP_
