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

#ifndef GLOVE_EVAL_HPP_
#define GLOVE_EVAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "glove/glove_sim.hpp"
#include "glove/quat.hpp"

namespace glove::eval {

/// sqrt(mean(e^2)). Throws EmptySeries.
double rmse(std::span<const double> errors_deg);

/// World rotation R with est(0) = R * truth(0): the offset at the first
/// paired sample. Apply conjugate(R) * est(t) before computing errors.
Quaternion align(std::span<const Quaternion> est, std::span<const Quaternion> truth);

struct SensorResult {
  int sensor_id = 0;
  double rmse_deg = 0.0;
  Quaternion alignment;
};

struct DriftReport {
  std::string test;
  double duration_s = 0.0;
  std::vector<SensorResult> per_sensor;
  double mean_deg = 0.0;  // arithmetic mean of per-sensor RMSE
  double sd_deg = 0.0;    // population SD across sensors
  std::string trajectory;
  std::string config_digest;
  std::uint64_t seed = 0;

  std::string to_json() const;
};

/// Per-sensor angular RMSE of the reported orientations against ground truth
/// after first-sample alignment, for a static_pose session of duration_s.
/// Throws ConfigError for any other trajectory.
DriftReport static_drift_test(const sim::SimConfig& config, double duration_s);

/// As static_drift_test, for scripted_flexion or random_motion.
DriftReport dynamic_drift_test(const sim::SimConfig& config, double duration_s);

/// Simulated minutes until the battery is empty.
double autonomy_test(const sim::SimConfig& config);

enum class TestKind { kStatic, kDynamic, kAutonomy };

/// Runs `trials` trials with seeds seed, seed+1, ... and returns the report
/// document: per-trial reports plus mean and SD across trials.
/// Throws ConfigError when trials is 0.
std::string run_trials(TestKind kind, const sim::SimConfig& config, double duration_s, int trials);

struct TrialSummary {
  std::vector<double> values;  // aggregate RMSE (deg) or autonomy (min) per trial
  double mean = 0.0;
  double sd = 0.0;
};

/// Parsed form of run_trials' output, for callers that need the numbers.
TrialSummary summarize(const std::string& trials_json);

}  // namespace glove::eval

#endif  // GLOVE_EVAL_HPP_
