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

#include "glove/imu_model.hpp"

#include <cmath>

#include "glove/errors.hpp"

namespace glove::imu {

namespace {

double gauss(std::mt19937_64& rng, double sigma) {
  if (sigma == 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

Vec3 gauss3(std::mt19937_64& rng, double sigma) {
  const double x = gauss(rng, sigma);
  const double y = gauss(rng, sigma);
  return {x, y, gauss(rng, sigma)};
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

NoiseModel NoiseModel::mpu9250_default(std::uint64_t seed) {
  NoiseModel n;
  n.gyro_bias0_range = 0.02;
  n.gyro_rw_sigma = 0.003;
  n.gyro_white_sigma = 0.1;
  n.accel_white_sigma = 0.008;
  n.seed = seed;
  return n;
}

NoiseModel NoiseModel::yaw_bias_only(double bias_dps, std::uint64_t seed) {
  NoiseModel n;
  n.gyro_bias0 = {0.0, 0.0, bias_dps};
  n.seed = seed;
  return n;
}

NoiseModel NoiseModel::calibrated(std::uint64_t seed) { return yaw_bias_only(kCalibratedYawBias, seed); }

bool NoiseModel::valid() const {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  return ok(gyro_bias0_range) && ok(gyro_rw_sigma) && ok(gyro_white_sigma) && ok(accel_white_sigma) &&
         std::isfinite(gyro_bias0.x) && std::isfinite(gyro_bias0.y) && std::isfinite(gyro_bias0.z);
}

ImuState make_state(const NoiseModel& noise, std::uint64_t stream, double alpha) {
  ImuState s{noise.gyro_bias0, std::mt19937_64(mix_seed(noise.seed, stream)), {}};
  s.filter.alpha = alpha;
  if (noise.gyro_bias0_range > 0.0) {
    std::uniform_real_distribution<double> u(-noise.gyro_bias0_range, noise.gyro_bias0_range);
    const double x = u(s.rng);
    const double y = u(s.rng);
    s.gyro_bias = s.gyro_bias + Vec3{x, y, u(s.rng)};
  }
  return s;
}

Reading sample(ImuState& state, const Truth& truth, const NoiseModel& noise, double dt_s) {
  state.gyro_bias = state.gyro_bias + gauss3(state.rng, noise.gyro_rw_sigma * std::sqrt(dt_s));
  Reading r;
  r.gyro = truth.omega_body + state.gyro_bias + gauss3(state.rng, noise.gyro_white_sigma);
  const Vec3 specific_force = kGravityWorld + truth.linear_accel_world;
  r.accel = rotate(conjugate(truth.orientation), specific_force) + gauss3(state.rng, noise.accel_white_sigma);
  return r;
}

Quaternion onboard_orientation(ImuState& state, const Reading& reading, double dt_s) {
  if (!state.filter.initialized) {
    try {
      state.filter = fusion::init_from_accel(reading.accel, state.filter.alpha);
    } catch (const NotStatic&) {
      return Quaternion::identity();
    }
    return state.filter.q;
  }
  state.filter = fusion::update(state.filter, reading.gyro, reading.accel, dt_s);
  return state.filter.q;
}

}  // namespace glove::imu
