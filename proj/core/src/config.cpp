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

#include "glove/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "glove/errors.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace glove::config {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown field \"" + key + "\"");
  }
}

imu::NoiseModel parse_noise(const json& j) {
  check_keys(j, "noise",
             {"preset", "gyro_bias0", "gyro_bias0_range", "gyro_rw_sigma", "gyro_white_sigma", "accel_white_sigma"});
  imu::NoiseModel n = imu::NoiseModel::calibrated();
  const auto preset = detail::optional<std::string>(j, "preset", "calibrated", "noise");
  if (preset == "mpu9250_default") {
    n = imu::NoiseModel::mpu9250_default();
  } else if (preset == "zero") {
    n = imu::NoiseModel{};
  } else if (preset != "calibrated") {
    throw ConfigError("noise.preset: unknown preset \"" + preset + "\"");
  }
  if (j.contains("gyro_bias0")) n.gyro_bias0 = detail::vec3_from(j.at("gyro_bias0"), "noise.gyro_bias0");
  n.gyro_bias0_range = detail::optional(j, "gyro_bias0_range", n.gyro_bias0_range, "noise");
  n.gyro_rw_sigma = detail::optional(j, "gyro_rw_sigma", n.gyro_rw_sigma, "noise");
  n.gyro_white_sigma = detail::optional(j, "gyro_white_sigma", n.gyro_white_sigma, "noise");
  n.accel_white_sigma = detail::optional(j, "accel_white_sigma", n.accel_white_sigma, "noise");
  return n;
}

sim::TimingModel parse_timing(const json& j) {
  check_keys(j, "timing",
             {"preset", "per_sensor_read_ms", "cycle_overhead_ms", "jitter_sigma", "stall_prob", "stall_ms",
              "loss_prob"});
  sim::TimingModel t;
  const auto preset = detail::optional<std::string>(j, "preset", "calibrated", "timing");
  if (preset == "wifi_jitter") {
    t = sim::TimingModel::wifi_jitter();
  } else if (preset != "calibrated") {
    throw ConfigError("timing.preset: unknown preset \"" + preset + "\"");
  }
  t.per_sensor_read_ms = detail::optional(j, "per_sensor_read_ms", t.per_sensor_read_ms, "timing");
  t.cycle_overhead_ms = detail::optional(j, "cycle_overhead_ms", t.cycle_overhead_ms, "timing");
  t.jitter_sigma = detail::optional(j, "jitter_sigma", t.jitter_sigma, "timing");
  t.stall_prob = detail::optional(j, "stall_prob", t.stall_prob, "timing");
  t.stall_ms = detail::optional(j, "stall_ms", t.stall_ms, "timing");
  t.loss_prob = detail::optional(j, "loss_prob", t.loss_prob, "timing");
  return t;
}

sim::TrajectorySpec parse_trajectory(const json& j, bool& seed_explicit) {
  check_keys(j, "trajectory",
             {"kind", "hand_back", "mcp_deg", "pip_deg", "amplitude_deg", "period_s", "rate_bound_dps", "seed"});
  sim::TrajectorySpec t;
  const auto kind = detail::require<std::string>(j, "kind", "trajectory");
  if (kind == "static_pose") {
    t.kind = sim::TrajectoryKind::kStaticPose;
  } else if (kind == "scripted_flexion") {
    t.kind = sim::TrajectoryKind::kScriptedFlexion;
  } else if (kind == "random_motion") {
    t.kind = sim::TrajectoryKind::kRandomMotion;
  } else {
    throw ConfigError("trajectory.kind: unknown kind \"" + kind + "\"");
  }
  if (j.contains("hand_back")) {
    const auto& q = j.at("hand_back");
    if (!q.is_array() || q.size() != 4) throw ConfigError("trajectory.hand_back: expected [w, x, y, z]");
    try {
      t.hand_back = normalize({q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>()});
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("trajectory.hand_back: expected numbers");
    } catch (const DegenerateQuaternion&) {
      throw ConfigError("trajectory.hand_back: zero quaternion");
    }
  }
  t.mcp_deg = detail::optional(j, "mcp_deg", t.mcp_deg, "trajectory");
  t.pip_deg = detail::optional(j, "pip_deg", t.pip_deg, "trajectory");
  t.amplitude_deg = detail::optional(j, "amplitude_deg", t.amplitude_deg, "trajectory");
  t.period_s = detail::optional(j, "period_s", t.period_s, "trajectory");
  t.rate_bound_dps = detail::optional(j, "rate_bound_dps", t.rate_bound_dps, "trajectory");
  seed_explicit = j.contains("seed");
  t.seed = detail::optional<std::uint64_t>(j, "seed", 0, "trajectory");
  return t;
}

std::vector<std::string> violations(const RunConfig& c) {
  std::vector<std::string> out;
  if (!c.sim.noise.valid()) out.push_back("noise: sigmas and bias range must be finite and >= 0");
  if (!c.sim.timing.valid()) out.push_back("timing: times must be >= 0 and probabilities in [0, 1]");
  if (!c.sim.battery.valid()) out.push_back("battery: capacity_mah must be >= 0 and draw_ma > 0");
  if (!(c.sim.fusion_alpha >= 0.0 && c.sim.fusion_alpha <= 1.0)) out.push_back("fusion.alpha: must be in [0, 1]");
  const auto& t = c.sim.trajectory;
  if (t.kind == sim::TrajectoryKind::kScriptedFlexion && !(t.period_s > 0.0)) {
    out.push_back("trajectory.period_s: must be > 0");
  }
  if (t.kind == sim::TrajectoryKind::kRandomMotion && !(t.rate_bound_dps > 0.0)) {
    out.push_back("trajectory.rate_bound_dps: must be > 0");
  }
  if (c.sim.topology.sensors.size() > wire::kMaxSamples) out.push_back("topology: more than 20 sensors");
  return out;
}

json trajectory_json(const sim::TrajectorySpec& t, bool seed_explicit) {
  switch (t.kind) {
    case sim::TrajectoryKind::kStaticPose:
      return {{"kind", "static_pose"},
              {"hand_back", detail::quat_to_json(t.hand_back)},
              {"mcp_deg", t.mcp_deg},
              {"pip_deg", t.pip_deg}};
    case sim::TrajectoryKind::kScriptedFlexion:
      return {{"kind", "scripted_flexion"}, {"amplitude_deg", t.amplitude_deg}, {"period_s", t.period_s}};
    case sim::TrajectoryKind::kRandomMotion: {
      json j = {{"kind", "random_motion"}, {"rate_bound_dps", t.rate_bound_dps}};
      if (seed_explicit) j["seed"] = t.seed;
      return j;
    }
  }
  return {};
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  const json doc = detail::parse_document(text, "config");
  check_keys(doc, "config", {"seed", "topology", "noise", "timing", "battery", "trajectory", "fusion", "network"});
  RunConfig c;
  c.network.port = default_port();
  c.sim.seed = detail::optional<std::uint64_t>(doc, "seed", 1, "config");
  if (doc.contains("topology")) {
    const auto& t = doc.at("topology");
    if (t.is_string() && t.get<std::string>() == "default") {
      c.sim.topology = default_topology();
    } else if (t.is_string() && t.get<std::string>() == "default_left") {
      c.sim.topology = default_topology(Handedness::kLeft);
    } else {
      c.sim.topology = detail::topology_from_json(t);
    }
  }
  if (doc.contains("noise")) c.sim.noise = parse_noise(doc.at("noise"));
  if (doc.contains("timing")) c.sim.timing = parse_timing(doc.at("timing"));
  if (doc.contains("battery")) {
    const auto& b = doc.at("battery");
    check_keys(b, "battery", {"capacity_mah", "draw_ma"});
    c.sim.battery.capacity_mah = detail::optional(b, "capacity_mah", c.sim.battery.capacity_mah, "battery");
    c.sim.battery.draw_ma = detail::optional(b, "draw_ma", c.sim.battery.draw_ma, "battery");
  }
  if (doc.contains("trajectory")) {
    c.sim.trajectory = parse_trajectory(doc.at("trajectory"), c.sim.trajectory_seed_explicit);
  }
  if (doc.contains("fusion")) {
    const auto& f = doc.at("fusion");
    check_keys(f, "fusion", {"alpha"});
    c.sim.fusion_alpha = detail::optional(f, "alpha", c.sim.fusion_alpha, "fusion");
  }
  if (doc.contains("network")) {
    const auto& n = doc.at("network");
    check_keys(n, "network", {"host", "port"});
    c.network.host = detail::optional(n, "host", c.network.host, "network");
    const int port = detail::optional<int>(n, "port", c.network.port, "network");
    if (port < 0 || port > 65535) throw ConfigError("network.port: out of range");
    c.network.port = static_cast<std::uint16_t>(port);
  }
  if (auto v = violations(c); !v.empty()) {
    std::string msg = "invalid config";
    for (const auto& s : v) msg += "; " + s;
    throw ConfigError(msg);
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string canonical_json(const sim::SimConfig& c) {
  const auto& n = c.noise;
  const auto& t = c.timing;
  const json j = {
      {"topology", detail::topology_to_json(c.topology)},
      {"noise",
       {{"gyro_bias0", {n.gyro_bias0.x, n.gyro_bias0.y, n.gyro_bias0.z}},
        {"gyro_bias0_range", n.gyro_bias0_range},
        {"gyro_rw_sigma", n.gyro_rw_sigma},
        {"gyro_white_sigma", n.gyro_white_sigma},
        {"accel_white_sigma", n.accel_white_sigma}}},
      {"timing",
       {{"per_sensor_read_ms", t.per_sensor_read_ms},
        {"cycle_overhead_ms", t.cycle_overhead_ms},
        {"jitter_sigma", t.jitter_sigma},
        {"stall_prob", t.stall_prob},
        {"stall_ms", t.stall_ms},
        {"loss_prob", t.loss_prob}}},
      {"battery", {{"capacity_mah", c.battery.capacity_mah}, {"draw_ma", c.battery.draw_ma}}},
      {"trajectory", trajectory_json(c.trajectory, c.trajectory_seed_explicit)},
      {"fusion", {{"alpha", c.fusion_alpha}}},
  };
  return j.dump();
}

std::string digest(const sim::SimConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_json(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint16_t default_port() {
  if (const char* env = std::getenv("GLOVE_PORT")) {
    const std::string_view s(env);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size() && value > 0 && value <= 65535) {
      return static_cast<std::uint16_t>(value);
    }
  }
  return wire::kDefaultPort;
}

double parse_duration_ms(std::string_view text) {
  double scale = 1000.0;
  std::string_view number = text;
  if (number.ends_with("ms")) {
    scale = 1.0;
    number.remove_suffix(2);
  } else if (number.ends_with("s")) {
    number.remove_suffix(1);
  } else if (number.ends_with("m")) {
    scale = 60'000.0;
    number.remove_suffix(1);
  } else if (number.ends_with("h")) {
    scale = 3'600'000.0;
    number.remove_suffix(1);
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (number.empty() || ec != std::errc() || ptr != number.data() + number.size() || !(value >= 0.0)) {
    throw ConfigError("invalid duration \"" + std::string(text) + "\" (use e.g. 10s, 30m, 1h)");
  }
  return value * scale;
}

}  // namespace glove::config
