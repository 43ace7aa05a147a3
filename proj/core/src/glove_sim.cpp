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

#include "glove/glove_sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "glove/errors.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace glove::sim {

namespace {

constexpr std::uint64_t kTimingStream = 0x71AE;
constexpr double kMsPerHour = 3.6e6;

Vec3 saturate(Vec3 v, double bound) {
  return {std::clamp(v.x, -bound, bound), std::clamp(v.y, -bound, bound), std::clamp(v.z, -bound, bound)};
}

TrajectorySpec seeded(TrajectorySpec spec, const SimConfig& c) {
  if (!c.trajectory_seed_explicit) spec.seed = c.seed;
  return spec;
}

}  // namespace

TimingModel TimingModel::calibrated() { return {}; }

TimingModel TimingModel::wifi_jitter() {
  TimingModel t;
  t.per_sensor_read_ms = 3.7;
  t.cycle_overhead_ms = 2.17;
  t.jitter_sigma = 0.6;
  t.stall_prob = 0.01;
  t.stall_ms = 300.0;
  return t;
}

bool TimingModel::valid() const {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  return ok(per_sensor_read_ms) && ok(cycle_overhead_ms) && ok(jitter_sigma) && ok(stall_ms) && ok(stall_prob) &&
         stall_prob <= 1.0 && ok(loss_prob) && loss_prob <= 1.0 && per_sensor_read_ms + cycle_overhead_ms > 0.0;
}

// A zero capacity is accepted: it models a flat battery.
bool BatteryModel::valid() const {
  return std::isfinite(capacity_mah) && capacity_mah >= 0.0 && std::isfinite(draw_ma) && draw_ma > 0.0;
}

GloveSim::GloveSim(SimConfig config)
    : config_(std::move(config)),
      trajectory_(seeded(config_.trajectory, config_), config_.topology.handedness),
      timing_rng_(imu::mix_seed(config_.seed, kTimingStream)),
      charge_mah_(config_.battery.capacity_mah) {
  if (auto v = validate(config_.topology); !v.empty()) throw TopologyInvalid(std::move(v));
  if (!config_.timing.valid()) throw ConfigError("timing: invalid model");
  if (!config_.battery.valid()) throw ConfigError("battery: invalid model");
  if (!config_.noise.valid()) throw ConfigError("noise: invalid model");
  imu::NoiseModel noise = config_.noise;
  noise.seed = config_.seed;
  for (const auto& e : config_.topology.read_order()) {
    sensors_.push_back({e, imu::make_state(noise, static_cast<std::uint64_t>(e.sensor_id), config_.fusion_alpha),
                        Quaternion::identity(), 0.0, true});
  }
}

GloveSim::Cycle GloveSim::step() {
  if (battery_empty()) throw BatteryEmpty(clock_ms_);
  const TimingModel& tm = config_.timing;
  double factor = 1.0;
  if (tm.jitter_sigma > 0.0) {
    const double z = std::normal_distribution<double>(0.0, 1.0)(timing_rng_);
    factor = std::exp(tm.jitter_sigma * z - 0.5 * tm.jitter_sigma * tm.jitter_sigma);
  }
  double stall = 0.0;
  if (tm.stall_prob > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(timing_rng_) < tm.stall_prob) {
    stall = tm.stall_ms;
  }
  bool lost = false;
  if (tm.loss_prob > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(timing_rng_) < tm.loss_prob) {
    lost = true;
  }
  const double cycle = tm.nominal_cycle_ms(sensors_.size()) * factor + stall;
  const double read_spacing = tm.per_sensor_read_ms * factor;

  Cycle out;
  wire::SensorPacket packet;
  packet.sequence = sequence_++;
  packet.samples.reserve(sensors_.size());
  out.truth.reserve(sensors_.size());
  for (std::size_t k = 0; k < sensors_.size(); ++k) {
    Sensor& s = sensors_[k];
    const double t_read = clock_ms_ + static_cast<double>(k + 1) * read_spacing;
    const Quaternion q = trajectory_.orientation(s.entry.segment, t_read * 1e-3);
    const double dt = std::max(t_read - s.last_read_ms, 1e-6) * 1e-3;
    imu::Truth truth{q, {}, trajectory_.linear_accel_world(s.entry.segment, t_read * 1e-3)};
    // The gyro reports the mean body rate over the interval since the last read.
    if (!s.first) truth.omega_body = (kRadToDeg / dt) * log_map(multiply(conjugate(s.last_truth), q));
    imu::Reading r = imu::sample(s.state, truth, config_.noise, dt);
    r.accel = saturate(r.accel, wire::kAccelRangeG);
    r.gyro = saturate(r.gyro, wire::kGyroRangeDps);
    const Quaternion est = imu::onboard_orientation(s.state, r, dt);
    s.last_truth = q;
    s.last_read_ms = t_read;
    s.first = false;

    wire::ImuSample sample;
    sample.sensor_id = static_cast<std::uint8_t>(s.entry.sensor_id);
    sample.timestamp_ms = static_cast<std::uint32_t>(static_cast<std::uint64_t>(std::floor(t_read)));
    sample.accel = r.accel;
    sample.gyro = r.gyro;
    sample.orientation = est;
    packet.samples.push_back(wire::quantize(sample));
    out.truth.push_back({t_read, s.entry.sensor_id, q});
  }
  clock_ms_ += cycle;
  charge_mah_ = std::max(0.0, charge_mah_ - config_.battery.draw_ma * cycle / kMsPerHour);
  out.send_time_ms = clock_ms_;
  out.cycle_ms = cycle;
  if (lost) {
    ++link_losses_;
  } else {
    out.packet = std::move(packet);
  }
  return out;
}

UdpSink::UdpSink(const std::string& host, std::uint16_t port, std::size_t queue_capacity)
    : queue_(queue_capacity) {
  socket_.connect(host, port);
  worker_ = std::thread([this] { run(); });
}

UdpSink::~UdpSink() {
  queue_.close();
  if (worker_.joinable()) worker_.join();
}

void UdpSink::send(double, const wire::SensorPacket& packet) {
  queue_.push(wire::encode(packet));
  ++pushed_;
}

void UdpSink::flush() {
  while (sent_.load() + queue_.dropped() < pushed_.load()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
}

void UdpSink::run() {
  for (;;) {
    auto item = queue_.pop(std::chrono::milliseconds(50));
    if (!item) {
      if (queue_.closed() && queue_.size() == 0) return;
      continue;
    }
    socket_.send(*item);  // fire and forget, like the device
    ++sent_;
  }
}

SessionLog run(const SimConfig& config, const RunOptions& options, PacketSink* sink) {
  GloveSim sim(config);
  SessionLog log;
  const auto wall_start = std::chrono::steady_clock::now();
  for (;;) {
    if (!options.until_empty && sim.clock_ms() >= options.duration_ms) break;
    if (sim.battery_empty()) {
      log.battery_empty = true;
      break;
    }
    GloveSim::Cycle c = sim.step();
    ++log.cycles;
    if (options.realtime_speed > 0.0) {
      const auto due = wall_start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                        std::chrono::duration<double, std::milli>(c.send_time_ms /
                                                                                  options.realtime_speed));
      std::this_thread::sleep_until(due);
    }
    if (options.keep_truth) log.truth.insert(log.truth.end(), c.truth.begin(), c.truth.end());
    if (c.packet) {
      if (sink != nullptr) sink->send(c.send_time_ms, *c.packet);
      if (options.keep_packets) log.packets.push_back({c.send_time_ms, std::move(*c.packet)});
    }
  }
  log.end_time_ms = sim.clock_ms();
  log.link_losses = sim.link_losses();
  return log;
}

std::string truth_json_line(const TruthRecord& r) {
  const nlohmann::json j = {{"t_ms", r.t_ms}, {"sensor_id", r.sensor_id}, {"quat", detail::quat_to_json(r.quat)}};
  return j.dump();
}

}  // namespace glove::sim
