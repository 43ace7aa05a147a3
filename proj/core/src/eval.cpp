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

#include "glove/eval.hpp"

#include <cmath>
#include <map>

#include "glove/config.hpp"
#include "glove/errors.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace glove::eval {

using nlohmann::json;

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> v) {
  MeanSd r;
  if (v.empty()) return r;
  for (double x : v) r.mean += x;
  r.mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - r.mean) * (x - r.mean);
  r.sd = std::sqrt(ss / static_cast<double>(v.size()));
  return r;
}

struct SensorTrace {
  bool aligned = false;
  Quaternion alignment;
  std::vector<double> errors;
};

DriftReport drift_test(const std::string& name, const sim::SimConfig& config, double duration_s) {
  sim::GloveSim sim(config);
  std::map<int, SensorTrace> traces;
  const double end_ms = duration_s * 1000.0;
  while (sim.clock_ms() < end_ms && !sim.battery_empty()) {
    sim::GloveSim::Cycle c = sim.step();
    if (!c.packet) continue;
    for (std::size_t k = 0; k < c.packet->samples.size(); ++k) {
      const auto& truth = c.truth[k];
      if (truth.t_ms > end_ms) continue;
      const Quaternion& est = c.packet->samples[k].orientation;
      SensorTrace& tr = traces[truth.sensor_id];
      if (!tr.aligned) {
        tr.alignment = align(std::span(&est, 1), std::span(&truth.quat, 1));
        tr.aligned = true;
      }
      tr.errors.push_back(angular_distance(multiply(conjugate(tr.alignment), est), truth.quat));
    }
  }
  DriftReport r;
  r.test = name;
  r.duration_s = std::min(sim.clock_ms(), end_ms) / 1000.0;
  r.trajectory = config.trajectory.describe();
  r.config_digest = config::digest(config);
  r.seed = config.seed;
  std::vector<double> values;
  for (const auto& [id, tr] : traces) {
    r.per_sensor.push_back({id, rmse(tr.errors), tr.alignment});
    values.push_back(r.per_sensor.back().rmse_deg);
  }
  const MeanSd agg = mean_sd(values);
  r.mean_deg = agg.mean;
  r.sd_deg = agg.sd;
  return r;
}

json report_json(const DriftReport& r) {
  json per = json::array();
  for (const auto& s : r.per_sensor) per.push_back({{"id", s.sensor_id}, {"rmse_deg", s.rmse_deg}});
  json align = json::object();
  for (const auto& s : r.per_sensor) align[std::to_string(s.sensor_id)] = detail::quat_to_json(s.alignment);
  return {{"test", r.test},
          {"duration_s", r.duration_s},
          {"per_sensor", per},
          {"aggregate", {{"mean_deg", r.mean_deg}, {"sd_deg", r.sd_deg}}},
          {"alignment", align},
          {"trajectory", r.trajectory},
          {"config_digest", r.config_digest},
          {"seed", r.seed}};
}

}  // namespace

double rmse(std::span<const double> errors_deg) {
  if (errors_deg.empty()) throw EmptySeries();
  double ss = 0.0;
  for (double e : errors_deg) ss += e * e;
  return std::sqrt(ss / static_cast<double>(errors_deg.size()));
}

Quaternion align(std::span<const Quaternion> est, std::span<const Quaternion> truth) {
  if (est.empty() || truth.empty()) throw EmptySeries();
  return normalize(multiply(est.front(), conjugate(truth.front())));
}

std::string DriftReport::to_json() const { return report_json(*this).dump(); }

DriftReport static_drift_test(const sim::SimConfig& config, double duration_s) {
  if (config.trajectory.kind != sim::TrajectoryKind::kStaticPose) {
    throw ConfigError("static test needs a static_pose trajectory");
  }
  return drift_test("static", config, duration_s);
}

DriftReport dynamic_drift_test(const sim::SimConfig& config, double duration_s) {
  if (config.trajectory.kind == sim::TrajectoryKind::kStaticPose) {
    throw ConfigError("dynamic test needs a scripted_flexion or random_motion trajectory");
  }
  return drift_test("dynamic", config, duration_s);
}

double autonomy_test(const sim::SimConfig& config) {
  sim::RunOptions opts;
  opts.until_empty = true;
  opts.keep_packets = false;
  opts.keep_truth = false;
  return sim::run(config, opts).end_time_ms / 60'000.0;
}

std::string run_trials(TestKind kind, const sim::SimConfig& config, double duration_s, int trials) {
  if (trials <= 0) throw ConfigError("trials must be >= 1");
  json per_trial = json::array();
  std::vector<double> values;
  for (int i = 0; i < trials; ++i) {
    sim::SimConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(i);
    switch (kind) {
      case TestKind::kStatic:
      case TestKind::kDynamic: {
        const DriftReport r = kind == TestKind::kStatic ? static_drift_test(c, duration_s)
                                                        : dynamic_drift_test(c, duration_s);
        values.push_back(r.mean_deg);
        per_trial.push_back(report_json(r));
        break;
      }
      case TestKind::kAutonomy: {
        const double minutes = autonomy_test(c);
        values.push_back(minutes);
        per_trial.push_back({{"test", "autonomy"},
                             {"minutes", minutes},
                             {"config_digest", config::digest(c)},
                             {"seed", c.seed}});
        break;
      }
    }
  }
  const MeanSd across = mean_sd(values);
  const char* name = kind == TestKind::kStatic ? "static" : kind == TestKind::kDynamic ? "dynamic" : "autonomy";
  json doc = {{"test", name},
              {"trials", trials},
              {"config_digest", config::digest(config)},
              {"seed", config.seed},
              {"per_trial", per_trial},
              {"across_trials", {{"mean", across.mean}, {"sd", across.sd}, {"values", values}}}};
  if (kind != TestKind::kAutonomy) doc["duration_s"] = duration_s;
  return doc.dump(2);
}

TrialSummary summarize(const std::string& trials_json) {
  const json doc = json::parse(trials_json);
  TrialSummary s;
  s.values = doc.at("across_trials").at("values").get<std::vector<double>>();
  s.mean = doc.at("across_trials").at("mean").get<double>();
  s.sd = doc.at("across_trials").at("sd").get<double>();
  return s;
}

}  // namespace glove::eval
