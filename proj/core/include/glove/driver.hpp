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

#ifndef GLOVE_DRIVER_HPP_
#define GLOVE_DRIVER_HPP_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "glove/bounded_queue.hpp"
#include "glove/udp.hpp"
#include "glove/wire.hpp"

namespace glove::driver {

/// Reordering tolerance: a sequence number up to this far behind the highest
/// seen is treated as a late arrival rather than a wrap.
inline constexpr std::uint32_t kReorderWindow = 1000;

/// Loss accounting over a wrapping u32 sequence. A late packet inside the
/// reorder window fills the gap it was counted in.
class SequenceTracker {
 public:
  void observe(std::uint32_t sequence);

  std::uint64_t received() const { return received_; }
  std::uint64_t lost() const { return lost_; }
  std::uint64_t reordered() const { return reordered_; }
  std::uint64_t duplicates() const { return duplicates_; }
  std::optional<std::uint32_t> first() const { return started_ ? std::optional(first_) : std::nullopt; }
  std::optional<std::uint32_t> highest() const { return started_ ? std::optional(highest_) : std::nullopt; }

 private:
  bool started_ = false;
  std::uint32_t first_ = 0;
  std::uint32_t highest_ = 0;
  std::uint64_t received_ = 0;
  std::uint64_t lost_ = 0;
  std::uint64_t reordered_ = 0;
  std::uint64_t duplicates_ = 0;
  std::vector<std::uint32_t> missing_;  // gaps still inside the reorder window
};

struct Arrival {
  double arrival_ms = 0.0;
  wire::SensorPacket packet;
  std::vector<std::uint8_t> payload;  // raw datagram
};

struct RateStats {
  double mean_hz = 0.0;
  double sd_hz = 0.0;
  std::size_t windows = 0;
};

/// Packet rate over consecutive whole 1 s windows starting at the first
/// arrival; SD is the population SD of the per-window counts. Throws
/// TooShort when the arrivals span less than 2 s.
RateStats window_rates(std::span<const double> arrival_ms);

struct SessionStats {
  std::uint64_t packets_received = 0;
  std::uint64_t packets_lost = 0;
  std::uint64_t malformed = 0;
  std::uint64_t consumer_drops = 0;
  double duration_s = 0.0;
  double rate_mean_hz = 0.0;
  double rate_sd_hz = 0.0;
  std::map<int, std::uint64_t> per_sensor_samples;

  std::string to_json() const;
};

/// Receiving side of one glove stream. ingest() is called by the receiving
/// context; consumers drain decoded packets with next(). The consumer queue
/// is bounded: on overflow the oldest packet is dropped and counted
/// separately from network loss.
class Session {
 public:
  explicit Session(std::size_t queue_capacity = 4096);

  /// Decodes one datagram. Returns false (and counts it) when malformed.
  bool ingest(double arrival_ms, std::span<const std::uint8_t> datagram);

  template <typename Rep, typename Period>
  std::optional<Arrival> next(std::chrono::duration<Rep, Period> timeout) {
    return queue_.pop(timeout);
  }

  /// Throws TooShort below 2 s of traffic.
  SessionStats stats() const;

  std::uint64_t malformed() const;
  std::uint64_t received() const;
  std::uint64_t consumer_drops() const { return queue_.dropped(); }
  std::vector<double> arrival_times() const;

 private:
  mutable std::mutex mu_;
  SequenceTracker tracker_;
  std::uint64_t malformed_ = 0;
  std::vector<double> arrivals_;
  std::map<int, std::uint64_t> per_sensor_;
  BoundedQueue<Arrival> queue_;
};

SessionStats stats(const Session& s);

/// Owns a bound UDP socket and feeds a Session from a background thread.
/// Arrival times are milliseconds since construction, multiplied by
/// time_scale (for sessions driven faster than real time).
class UdpReceiver {
 public:
  UdpReceiver(Session& session, std::uint16_t port, const std::string& host = "0.0.0.0",
              double time_scale = 1.0);
  ~UdpReceiver();
  UdpReceiver(const UdpReceiver&) = delete;
  UdpReceiver& operator=(const UdpReceiver&) = delete;

  std::uint16_t port() const { return port_; }
  void stop();

 private:
  void run();

  Session& session_;
  net::UdpSocket socket_;
  std::uint16_t port_ = 0;
  double time_scale_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<bool> stop_{false};
  std::thread worker_;
};

/// Binds the port (throws NetworkError) and starts receiving into session.
inline std::unique_ptr<UdpReceiver> listen(Session& session, std::uint16_t port, double time_scale = 1.0) {
  return std::make_unique<UdpReceiver>(session, port, "0.0.0.0", time_scale);
}

// Recording file, little-endian:
//   header (16 bytes): magic "GLVR", version u16 = 1, reserved u16 = 0,
//                      start epoch ms u64
//   frames:            arrival_offset_ms u32, payload_len u16, payload
inline constexpr std::uint16_t kRecordingVersion = 1;
inline constexpr std::size_t kRecordingHeaderSize = 16;

struct RecordedFrame {
  std::uint32_t arrival_offset_ms = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const RecordedFrame&, const RecordedFrame&) = default;
};

struct Recording {
  std::uint64_t start_epoch_ms = 0;
  std::vector<RecordedFrame> frames;
};

std::vector<std::uint8_t> serialize_recording(const Recording& r);
/// Throws RecordingCorrupt with the offset of the first bad byte.
Recording parse_recording(std::span<const std::uint8_t> bytes);

void write_recording(const std::string& path, const Recording& r);
Recording read_recording(const std::string& path);

/// Appends frames to a recording file as they arrive.
class RecordingWriter {
 public:
  RecordingWriter(const std::string& path, std::uint64_t start_epoch_ms);
  ~RecordingWriter();
  void append(std::uint32_t arrival_offset_ms, std::span<const std::uint8_t> payload);
  void flush();

 private:
  std::ofstream out_;
  std::string path_;
  std::uint32_t last_offset_ = 0;
};

/// Converts a session's retained arrivals into a recording.
Recording to_recording(std::span<const Arrival> arrivals, std::uint64_t start_epoch_ms);

struct ReplayedPacket {
  double offset_ms = 0.0;  // recorded arrival offset
  wire::SensorPacket packet;
};

/// Decodes every frame. Throws RecordingCorrupt on a payload that does not
/// decode.
std::vector<ReplayedPacket> decode_recording(const Recording& r);

/// Delivers packets in order, sleeping so that the gaps between deliveries
/// are the recorded gaps divided by speed. speed <= 0 delivers without
/// pausing. Returns the wall-clock duration of the replay.
template <typename OnPacket>
std::chrono::duration<double, std::milli> replay(const Recording& r, double speed, OnPacket&& on_packet) {
  const auto packets = decode_recording(r);
  const auto start = std::chrono::steady_clock::now();
  const double origin = packets.empty() ? 0.0 : packets.front().offset_ms;
  for (const auto& p : packets) {
    if (speed > 0.0) {
      std::this_thread::sleep_until(start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                std::chrono::duration<double, std::milli>((p.offset_ms - origin) /
                                                                                          speed)));
    }
    on_packet(p);
  }
  return std::chrono::steady_clock::now() - start;
}

/// Flattens samples to CSV with header
/// t_ms,sensor_id,ax,ay,az,gx,gy,gz,qw,qx,qy,qz. Returns the row count.
std::size_t export_csv(const Recording& r, std::ostream& out);

}  // namespace glove::driver

#endif  // GLOVE_DRIVER_HPP_
