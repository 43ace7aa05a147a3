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

#ifndef GLOVE_ERRORS_HPP_
#define GLOVE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace glove {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateQuaternion : public Error {
 public:
  DegenerateQuaternion() : Error("quaternion has zero norm") {}
};

class DegenerateAxis : public Error {
 public:
  DegenerateAxis() : Error("rotation axis has zero norm") {}
};

/// Malformed configuration document; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class TopologyInvalid : public Error {
 public:
  explicit TopologyInvalid(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

enum class ProtocolErrorKind { kBadMagic, kUnsupportedVersion, kTruncated, kCountMismatch, kPacketTooLarge };

class ProtocolError : public Error {
 public:
  ProtocolError(ProtocolErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  ProtocolErrorKind kind() const { return kind_; }

 private:
  ProtocolErrorKind kind_;
};

/// Accelerometer reading too far from 1 g to initialise attitude from it.
class NotStatic : public Error {
 public:
  using Error::Error;
};

class MissingReference : public Error {
 public:
  using Error::Error;
};

/// Terminal simulator state: the battery charge reached zero.
class BatteryEmpty : public Error {
 public:
  explicit BatteryEmpty(double sim_time_ms)
      : Error("battery empty"), sim_time_ms_(sim_time_ms) {}
  double sim_time_ms() const { return sim_time_ms_; }

 private:
  double sim_time_ms_;
};

class NetworkError : public Error {
 public:
  using Error::Error;
};

class RecordingCorrupt : public Error {
 public:
  RecordingCorrupt(std::size_t offset, const std::string& what)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class TooShort : public Error {
 public:
  using Error::Error;
};

class EmptySeries : public Error {
 public:
  EmptySeries() : Error("empty error series") {}
};

}  // namespace glove

#endif  // GLOVE_ERRORS_HPP_
