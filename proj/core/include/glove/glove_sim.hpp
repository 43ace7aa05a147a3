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

#ifndef GLOVE_GLOVE_SIM_HPP_
#define GLOVE_GLOVE_SIM_HPP_

#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "glove/bounded_queue.hpp"
#include "glove/imu_model.hpp"
#include "glove/topology.hpp"
#include "glove/trajectory.hpp"
#include "glove/udp.hpp"
#include "glove/wire.hpp"

namespace glove::sim {

/// Acquisition-cycle timing of the glove firmware. One cycle reads every
/// sensor in turn and sends one packet:
///
///   cycle = (n * per_sensor_read_ms + cycle_overhead_ms) * J + S
///
/// where J is lognormal with unit mean and log-sigma jitter_sigma, and S is
/// stall_ms with probability stall_prob. loss_prob drops the datagram on the
/// link after the sequence number has been spent.
struct TimingModel {
  double per_sensor_read_ms = 4.0;
  double cycle_overhead_ms = 1.87;
  double jitter_sigma = 0.0;
  double stall_prob = 0.0;
  double stall_ms = 300.0;
  double loss_prob = 0.0;

  /// 11 sensors at 45.87 ms per cycle (21.8 Hz), no jitter.
  static TimingModel calibrated();
  /// Same 45.87 ms mean cycle, reached with lognormal jitter and 300 ms
  /// stalls on 1% of cycles, giving heavy-tailed cycle times.
  static TimingModel wifi_jitter();

  double nominal_cycle_ms(std::size_t sensor_count) const {
    return static_cast<double>(sensor_count) * per_sensor_read_ms + cycle_overhead_ms;
  }
  bool valid() const;
};

/// Constant-current battery.
struct BatteryModel {
  double capacity_mah = 220.0;
  double draw_ma = 209.9;

  double lifetime_ms() const { return capacity_mah / draw_ma * 3.6e6; }
  bool valid() const;
};

struct SimConfig {
  SensorTopology topology = default_topology();
  imu::NoiseModel noise = imu::NoiseModel::calibrated();
  TimingModel timing = TimingModel::calibrated();
  BatteryModel battery;
  TrajectorySpec trajectory;
  double fusion_alpha = fusion::kDefaultAlpha;
  /// Master seed. Overrides noise.seed, and the random_motion seed unless
  /// that was given explicitly.
  std::uint64_t seed = 1;
  bool trajectory_seed_explicit = false;
};

/// Exact orientation of one sensor at the instant it was read.
struct TruthRecord {
  double t_ms = 0.0;
  int sensor_id = 0;
  Quaternion quat;
};

/// Virtual firmware. Single-threaded and deterministic for a given config.
class GloveSim {
 public:
  explicit GloveSim(SimConfig config);

  struct Cycle {
    std::optional<wire::SensorPacket> packet;  // nullopt when lost on the link
    double send_time_ms = 0.0;
    double cycle_ms = 0.0;
    std::vector<TruthRecord> truth;  // one per sample, read order
  };

  /// Reads every sensor (lane 0..5, address A then B) and assembles one
  /// packet. Throws BatteryEmpty once the charge has reached zero.
  Cycle step();

  double clock_ms() const { return clock_ms_; }
  double charge_mah() const { return charge_mah_; }
  bool battery_empty() const { return charge_mah_ <= 0.0; }
  std::uint64_t link_losses() const { return link_losses_; }
  const SimConfig& config() const { return config_; }
  const Trajectory& trajectory() const { return trajectory_; }

 private:
  struct Sensor {
    SensorEntry entry;
    imu::ImuState state;
    Quaternion last_truth;
    double last_read_ms = 0.0;
    bool first = true;
  };

  SimConfig config_;
  Trajectory trajectory_;
  std::vector<Sensor> sensors_;
  std::mt19937_64 timing_rng_;
  double clock_ms_ = 0.0;
  double charge_mah_ = 0.0;
  std::uint32_t sequence_ = 0;
  std::uint64_t link_losses_ = 0;
};

class PacketSink {
 public:
  virtual ~PacketSink() = default;
  virtual void send(double sim_time_ms, const wire::SensorPacket& packet) = 0;
};

struct SentPacket {
  double send_time_ms = 0.0;
  wire::SensorPacket packet;
};

class CollectorSink : public PacketSink {
 public:
  void send(double sim_time_ms, const wire::SensorPacket& packet) override {
    packets.push_back({sim_time_ms, packet});
  }
  std::vector<SentPacket> packets;
};

/// Sends encoded packets from a background thread. A full queue drops the
/// oldest pending datagram instead of stalling the simulated clock.
class UdpSink : public PacketSink {
 public:
  UdpSink(const std::string& host, std::uint16_t port, std::size_t queue_capacity = 4096);
  ~UdpSink() override;

  void send(double sim_time_ms, const wire::SensorPacket& packet) override;
  /// Blocks until every queued datagram has been handed to the kernel.
  void flush();

  std::uint64_t dropped() const { return queue_.dropped(); }
  std::uint64_t sent() const { return sent_.load(); }

 private:
  void run();

  net::UdpSocket socket_;
  BoundedQueue<std::vector<std::uint8_t>> queue_;
  std::atomic<std::uint64_t> sent_{0};
  std::atomic<std::uint64_t> pushed_{0};
  std::thread worker_;
};

struct RunOptions {
  /// Simulated duration; ignored when until_empty is set.
  double duration_ms = 10'000.0;
  bool until_empty = false;
  /// 0 runs as fast as possible; otherwise sleeps so that simulated time
  /// advances `realtime_speed` times faster than the wall clock.
  double realtime_speed = 0.0;
  bool keep_packets = true;
  bool keep_truth = true;
};

struct SessionLog {
  std::vector<SentPacket> packets;
  std::vector<TruthRecord> truth;
  double end_time_ms = 0.0;
  std::uint64_t cycles = 0;
  std::uint64_t link_losses = 0;
  bool battery_empty = false;
};

/// Drives the simulator until the duration elapses or the battery empties.
/// Packets go to `sink` when given and are retained in the log when
/// keep_packets is set.
SessionLog run(const SimConfig& config, const RunOptions& options, PacketSink* sink = nullptr);

/// Ground-truth side channel record: {"t_ms":..,"sensor_id":..,"quat":[w,x,y,z]}.
std::string truth_json_line(const TruthRecord& r);

}  // namespace glove::sim

#endif  // GLOVE_GLOVE_SIM_HPP_
