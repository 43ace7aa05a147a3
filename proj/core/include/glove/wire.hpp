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

#ifndef GLOVE_WIRE_HPP_
#define GLOVE_WIRE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "glove/quat.hpp"

namespace glove::wire {

// Version 1 datagram layout, all fields little-endian:
//
//   header (12 bytes)
//     0  magic "GLV1"      47 4C 56 31
//     4  version u8        1
//     5  flags u8          0
//     6  sample_count u8   0..20
//     7  reserved u8       0
//     8  sequence u32      wraps modulo 2^32
//   sample record (48 bytes), repeated sample_count times
//     0  sensor_id u8
//     1  flags u8          0
//     2  reserved u16      0
//     4  timestamp_ms u32  since glove boot
//     8  accel 3 x f32     g
//    20  gyro 3 x f32      deg/s
//    32  quat 4 x f32      w, x, y, z

inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 12;
inline constexpr std::size_t kSampleSize = 48;
inline constexpr std::size_t kMaxSamples = 20;
inline constexpr std::uint16_t kDefaultPort = 9750;

/// Sensor full-scale bounds.
inline constexpr double kAccelRangeG = 16.0;
inline constexpr double kGyroRangeDps = 2000.0;

/// One sensor reading. Values travel as f32; use quantize() to obtain
/// exactly what a receiver will decode.
struct ImuSample {
  std::uint8_t sensor_id = 0;
  std::uint32_t timestamp_ms = 0;
  Vec3 accel;  // g
  Vec3 gyro;   // deg/s
  Quaternion orientation;

  friend bool operator==(const ImuSample&, const ImuSample&) = default;
};

struct SensorPacket {
  std::uint32_t sequence = 0;
  std::vector<ImuSample> samples;

  friend bool operator==(const SensorPacket&, const SensorPacket&) = default;
};

/// Rounds every real field to f32 precision.
ImuSample quantize(const ImuSample& s);

/// True when the sample satisfies the wire-level range and norm bounds.
bool in_range(const ImuSample& s);

inline constexpr std::size_t encoded_size(std::size_t sample_count) {
  return kHeaderSize + kSampleSize * sample_count;
}

/// Throws ProtocolError(kPacketTooLarge) above kMaxSamples samples.
std::vector<std::uint8_t> encode(const SensorPacket& p);

/// Throws ProtocolError with kind kBadMagic, kUnsupportedVersion, kTruncated,
/// kCountMismatch (trailing bytes) or kPacketTooLarge (count above 20).
SensorPacket decode(std::span<const std::uint8_t> bytes);

}  // namespace glove::wire

#endif  // GLOVE_WIRE_HPP_
