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

#include "glove/wire.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "glove/errors.hpp"

namespace glove::wire {

namespace {

constexpr std::uint8_t kMagic[4] = {0x47, 0x4C, 0x56, 0x31};

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(double v) { u32(std::bit_cast<std::uint32_t>(static_cast<float>(v))); }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return in_[pos_++]; }
  std::uint16_t u16() {
    const auto lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  double f32() { return std::bit_cast<float>(u32()); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

double round_f32(double v) { return static_cast<float>(v); }

}  // namespace

ImuSample quantize(const ImuSample& s) {
  ImuSample q = s;
  q.accel = {round_f32(s.accel.x), round_f32(s.accel.y), round_f32(s.accel.z)};
  q.gyro = {round_f32(s.gyro.x), round_f32(s.gyro.y), round_f32(s.gyro.z)};
  q.orientation = {round_f32(s.orientation.w), round_f32(s.orientation.x), round_f32(s.orientation.y),
                   round_f32(s.orientation.z)};
  return q;
}

bool in_range(const ImuSample& s) {
  auto within = [](Vec3 v, double bound) {
    return std::abs(v.x) <= bound && std::abs(v.y) <= bound && std::abs(v.z) <= bound;
  };
  return within(s.accel, kAccelRangeG) && within(s.gyro, kGyroRangeDps) &&
         std::abs(norm(s.orientation) - 1.0) <= 1e-3;
}

std::vector<std::uint8_t> encode(const SensorPacket& p) {
  if (p.samples.size() > kMaxSamples) {
    throw ProtocolError(ProtocolErrorKind::kPacketTooLarge,
                        "packet has " + std::to_string(p.samples.size()) + " samples, limit is 20");
  }
  std::vector<std::uint8_t> out;
  out.reserve(encoded_size(p.samples.size()));
  Writer w(out);
  for (auto b : kMagic) w.u8(b);
  w.u8(kVersion);
  w.u8(0);
  w.u8(static_cast<std::uint8_t>(p.samples.size()));
  w.u8(0);
  w.u32(p.sequence);
  for (const auto& s : p.samples) {
    w.u8(s.sensor_id);
    w.u8(0);
    w.u16(0);
    w.u32(s.timestamp_ms);
    for (double v : {s.accel.x, s.accel.y, s.accel.z}) w.f32(v);
    for (double v : {s.gyro.x, s.gyro.y, s.gyro.z}) w.f32(v);
    for (double v : {s.orientation.w, s.orientation.x, s.orientation.y, s.orientation.z}) w.f32(v);
  }
  return out;
}

SensorPacket decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    // A short buffer with the wrong leading bytes is still reported as bad magic.
    for (std::size_t i = 0; i < bytes.size() && i < 4; ++i) {
      if (bytes[i] != kMagic[i]) throw ProtocolError(ProtocolErrorKind::kBadMagic, "bad magic");
    }
    throw ProtocolError(ProtocolErrorKind::kTruncated,
                        "datagram of " + std::to_string(bytes.size()) + " bytes is shorter than the header");
  }
  Reader r(bytes);
  for (auto b : kMagic) {
    if (r.u8() != b) throw ProtocolError(ProtocolErrorKind::kBadMagic, "bad magic");
  }
  const auto version = r.u8();
  if (version != kVersion) {
    throw ProtocolError(ProtocolErrorKind::kUnsupportedVersion,
                        "unsupported protocol version " + std::to_string(version));
  }
  r.u8();  // flags
  const std::size_t count = r.u8();
  r.u8();  // reserved
  SensorPacket p;
  p.sequence = r.u32();
  if (count > kMaxSamples) {
    throw ProtocolError(ProtocolErrorKind::kPacketTooLarge,
                        "header claims " + std::to_string(count) + " samples, limit is 20");
  }
  const std::size_t expected = encoded_size(count);
  if (bytes.size() < expected) {
    throw ProtocolError(ProtocolErrorKind::kTruncated, "header claims " + std::to_string(count) +
                                                           " samples but only " + std::to_string(bytes.size()) +
                                                           " bytes are present");
  }
  if (bytes.size() > expected) {
    throw ProtocolError(ProtocolErrorKind::kCountMismatch,
                        std::to_string(bytes.size() - expected) + " trailing bytes after " +
                            std::to_string(count) + " samples");
  }
  p.samples.resize(count);
  for (auto& s : p.samples) {
    s.sensor_id = r.u8();
    r.u8();
    r.u16();
    s.timestamp_ms = r.u32();
    s.accel = {r.f32(), r.f32(), r.f32()};
    s.gyro = {r.f32(), r.f32(), r.f32()};
    const double w = r.f32(), x = r.f32(), y = r.f32(), z = r.f32();
    s.orientation = {w, x, y, z};
  }
  return p;
}

}  // namespace glove::wire
