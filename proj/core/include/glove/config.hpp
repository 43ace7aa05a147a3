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

#ifndef GLOVE_CONFIG_HPP_
#define GLOVE_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "glove/glove_sim.hpp"

namespace glove::config {

struct NetworkConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 9750;
};

/// Everything needed to reproduce a run. Sections of the JSON document:
/// seed, topology ("default" or a topology document), noise, timing,
/// battery, trajectory, fusion, network. Absent sections take defaults;
/// "preset" keys select a named model whose fields may then be overridden.
struct RunConfig {
  sim::SimConfig sim;
  NetworkConfig network;
};

/// Throws ConfigError (listing every problem found) or TopologyInvalid.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string& path);

/// Fully expanded, key-sorted JSON of the simulation settings, seed
/// excluded: reports carry the seed next to the digest.
std::string canonical_json(const sim::SimConfig& c);

/// FNV-1a 64 of canonical_json, as 16 hex digits.
std::string digest(const sim::SimConfig& c);

/// GLOVE_PORT from the environment when set and valid, else 9750.
std::uint16_t default_port();

/// "250ms", "10s", "30m", "1.5h" or bare seconds, to milliseconds.
/// Throws ConfigError.
double parse_duration_ms(std::string_view text);

}  // namespace glove::config

#endif  // GLOVE_CONFIG_HPP_
