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

#include "glove/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "glove/errors.hpp"
#include "json.hpp"

namespace glove::driver {

// ---------------------------------------------------------------------------
// Sequence tracking

void SequenceTracker::observe(std::uint32_t sequence) {
  if (!started_) {
    started_ = true;
    first_ = highest_ = sequence;
    ++received_;
    return;
  }
  const auto diff = static_cast<std::int32_t>(sequence - highest_);
  if (diff > 0) {
    const std::uint32_t gap = static_cast<std::uint32_t>(diff) - 1;
    lost_ += gap;
    const std::uint32_t keep = std::min(gap, kReorderWindow);
    for (std::uint32_t k = keep; k > 0; --k) missing_.push_back(sequence - k);
    highest_ = sequence;
    std::erase_if(missing_, [&](std::uint32_t m) { return highest_ - m > kReorderWindow; });
    ++received_;
    return;
  }
  if (diff == 0) {
    ++duplicates_;
    return;
  }
  if (static_cast<std::uint32_t>(-static_cast<std::int64_t>(diff)) <= kReorderWindow) {
    auto it = std::find(missing_.begin(), missing_.end(), sequence);
    if (it == missing_.end()) {
      ++duplicates_;
      return;
    }
    missing_.erase(it);
    --lost_;
    ++reordered_;
    ++received_;
    return;
  }
  // Far behind the window: a stale packet, delivered but not reconciled.
  ++reordered_;
  ++received_;
}

// ---------------------------------------------------------------------------
// Rates and session statistics

RateStats window_rates(std::span<const double> arrival_ms) {
  if (arrival_ms.empty()) throw TooShort("no packets received");
  const double t0 = arrival_ms.front();
  const double span_ms = arrival_ms.back() - t0;
  if (span_ms < 2000.0) throw TooShort("session spans " + std::to_string(span_ms / 1000.0) + " s, need 2 s");
  const auto n = static_cast<std::size_t>(std::floor(span_ms / 1000.0));
  std::vector<double> counts(n, 0.0);
  for (double t : arrival_ms) {
    const auto k = static_cast<std::size_t>(std::floor((t - t0) / 1000.0));
    if (k < n) counts[k] += 1.0;
  }
  RateStats r;
  r.windows = n;
  for (double c : counts) r.mean_hz += c;
  r.mean_hz /= static_cast<double>(n);
  double ss = 0.0;
  for (double c : counts) ss += (c - r.mean_hz) * (c - r.mean_hz);
  r.sd_hz = std::sqrt(ss / static_cast<double>(n));
  return r;
}

std::string SessionStats::to_json() const {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [id, n] : per_sensor_samples) per[std::to_string(id)] = n;
  const nlohmann::json j = {{"packets_received", packets_received},
                            {"packets_lost", packets_lost},
                            {"malformed", malformed},
                            {"consumer_drops", consumer_drops},
                            {"duration_s", duration_s},
                            {"rate_mean_hz", rate_mean_hz},
                            {"rate_sd_hz", rate_sd_hz},
                            {"per_sensor_samples", per}};
  return j.dump();
}

Session::Session(std::size_t queue_capacity) : queue_(queue_capacity) {}

bool Session::ingest(double arrival_ms, std::span<const std::uint8_t> datagram) {
  Arrival a;
  try {
    a.packet = wire::decode(datagram);
  } catch (const ProtocolError&) {
    std::lock_guard lock(mu_);
    ++malformed_;
    return false;
  }
  a.arrival_ms = arrival_ms;
  a.payload.assign(datagram.begin(), datagram.end());
  {
    std::lock_guard lock(mu_);
    tracker_.observe(a.packet.sequence);
    arrivals_.push_back(arrival_ms);
    for (const auto& s : a.packet.samples) ++per_sensor_[s.sensor_id];
  }
  queue_.push(std::move(a));
  return true;
}

SessionStats Session::stats() const {
  std::lock_guard lock(mu_);
  const RateStats rates = window_rates(arrivals_);
  SessionStats s;
  s.packets_received = tracker_.received();
  s.packets_lost = tracker_.lost();
  s.malformed = malformed_;
  s.consumer_drops = queue_.dropped();
  s.duration_s = (arrivals_.back() - arrivals_.front()) / 1000.0;
  s.rate_mean_hz = rates.mean_hz;
  s.rate_sd_hz = rates.sd_hz;
  s.per_sensor_samples = per_sensor_;
  return s;
}

std::uint64_t Session::malformed() const {
  std::lock_guard lock(mu_);
  return malformed_;
}

std::uint64_t Session::received() const {
  std::lock_guard lock(mu_);
  return tracker_.received();
}

std::vector<double> Session::arrival_times() const {
  std::lock_guard lock(mu_);
  return arrivals_;
}

SessionStats stats(const Session& s) { return s.stats(); }

// ---------------------------------------------------------------------------
// UDP receiver

UdpReceiver::UdpReceiver(Session& session, std::uint16_t port, const std::string& host, double time_scale)
    : session_(session), time_scale_(time_scale), start_(std::chrono::steady_clock::now()) {
  socket_.bind(host, port);
  port_ = socket_.local_port();
  worker_ = std::thread([this] { run(); });
}

UdpReceiver::~UdpReceiver() { stop(); }

void UdpReceiver::stop() {
  stop_ = true;
  if (worker_.joinable()) worker_.join();
}

void UdpReceiver::run() {
  while (!stop_) {
    auto datagram = socket_.receive(std::chrono::milliseconds(20));
    if (!datagram) continue;
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start_;
    session_.ingest(elapsed.count() * time_scale_, *datagram);
  }
}

// ---------------------------------------------------------------------------
// Recording files

namespace {

constexpr std::uint8_t kRecordingMagic[4] = {'G', 'L', 'V', 'R'};

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t pos, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
  return v;
}

std::vector<std::uint8_t> header_bytes(std::uint64_t start_epoch_ms) {
  std::vector<std::uint8_t> out(std::begin(kRecordingMagic), std::end(kRecordingMagic));
  put_le(out, kRecordingVersion, 2);
  put_le(out, 0, 2);
  put_le(out, start_epoch_ms, 8);
  return out;
}

void append_frame(std::vector<std::uint8_t>& out, std::uint32_t offset, std::span<const std::uint8_t> payload) {
  if (payload.size() > 0xFFFF) throw Error("recording frame payload exceeds 65535 bytes");
  put_le(out, offset, 4);
  put_le(out, payload.size(), 2);
  out.insert(out.end(), payload.begin(), payload.end());
}

}  // namespace

std::vector<std::uint8_t> serialize_recording(const Recording& r) {
  std::vector<std::uint8_t> out = header_bytes(r.start_epoch_ms);
  for (const auto& f : r.frames) append_frame(out, f.arrival_offset_ms, f.payload);
  return out;
}

Recording parse_recording(std::span<const std::uint8_t> bytes) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (i >= bytes.size()) throw RecordingCorrupt(bytes.size(), "truncated header");
    if (bytes[i] != kRecordingMagic[i]) throw RecordingCorrupt(i, "bad recording magic");
  }
  if (bytes.size() < kRecordingHeaderSize) throw RecordingCorrupt(bytes.size(), "truncated header");
  const auto version = get_le(bytes, 4, 2);
  if (version != kRecordingVersion) {
    throw RecordingCorrupt(4, "unsupported recording version " + std::to_string(version));
  }
  Recording r;
  r.start_epoch_ms = get_le(bytes, 8, 8);
  std::size_t pos = kRecordingHeaderSize;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 6) throw RecordingCorrupt(pos, "truncated frame header");
    RecordedFrame f;
    f.arrival_offset_ms = static_cast<std::uint32_t>(get_le(bytes, pos, 4));
    const auto len = static_cast<std::size_t>(get_le(bytes, pos + 4, 2));
    if (!r.frames.empty() && f.arrival_offset_ms < r.frames.back().arrival_offset_ms) {
      throw RecordingCorrupt(pos, "arrival offsets decrease");
    }
    if (bytes.size() - pos - 6 < len) throw RecordingCorrupt(pos + 6, "truncated frame payload");
    f.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos + 6),
                     bytes.begin() + static_cast<std::ptrdiff_t>(pos + 6 + len));
    r.frames.push_back(std::move(f));
    pos += 6 + len;
  }
  return r;
}

void write_recording(const std::string& path, const Recording& r) {
  const auto bytes = serialize_recording(r);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path);
}

Recording read_recording(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_recording(bytes);
}

RecordingWriter::RecordingWriter(const std::string& path, std::uint64_t start_epoch_ms)
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw Error("cannot open " + path + " for writing");
  const auto header = header_bytes(start_epoch_ms);
  out_.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
}

RecordingWriter::~RecordingWriter() { out_.flush(); }

void RecordingWriter::append(std::uint32_t arrival_offset_ms, std::span<const std::uint8_t> payload) {
  arrival_offset_ms = std::max(arrival_offset_ms, last_offset_);
  last_offset_ = arrival_offset_ms;
  std::vector<std::uint8_t> frame;
  append_frame(frame, arrival_offset_ms, payload);
  out_.write(reinterpret_cast<const char*>(frame.data()), static_cast<std::streamsize>(frame.size()));
}

void RecordingWriter::flush() {
  out_.flush();
  if (!out_) throw Error("write failed: " + path_);
}

Recording to_recording(std::span<const Arrival> arrivals, std::uint64_t start_epoch_ms) {
  Recording r;
  r.start_epoch_ms = start_epoch_ms;
  std::uint32_t last = 0;
  for (const auto& a : arrivals) {
    last = std::max(last, static_cast<std::uint32_t>(std::llround(std::max(0.0, a.arrival_ms))));
    r.frames.push_back({last, a.payload});
  }
  return r;
}

std::vector<ReplayedPacket> decode_recording(const Recording& r) {
  std::vector<ReplayedPacket> out;
  out.reserve(r.frames.size());
  std::size_t pos = kRecordingHeaderSize;
  for (const auto& f : r.frames) {
    try {
      out.push_back({static_cast<double>(f.arrival_offset_ms), wire::decode(f.payload)});
    } catch (const ProtocolError& e) {
      throw RecordingCorrupt(pos + 6, std::string("undecodable frame payload: ") + e.what());
    }
    pos += 6 + f.payload.size();
  }
  return out;
}

std::size_t export_csv(const Recording& r, std::ostream& out) {
  out << "t_ms,sensor_id,ax,ay,az,gx,gy,gz,qw,qx,qy,qz\n";
  std::size_t rows = 0;
  char line[512];
  for (const auto& p : decode_recording(r)) {
    for (const auto& s : p.packet.samples) {
      std::snprintf(line, sizeof(line), "%u,%u,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                    s.timestamp_ms, static_cast<unsigned>(s.sensor_id), s.accel.x, s.accel.y, s.accel.z, s.gyro.x,
                    s.gyro.y, s.gyro.z, s.orientation.w, s.orientation.x, s.orientation.y, s.orientation.z);
      out << line;
      ++rows;
    }
  }
  return rows;
}

}  // namespace glove::driver
