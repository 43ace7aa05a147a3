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

#include <benchmark/benchmark.h>

#include "glove/fusion.hpp"
#include "glove/glove_sim.hpp"
#include "glove/hand_model.hpp"
#include "glove/quat.hpp"
#include "glove/wire.hpp"

namespace {

using namespace glove;

wire::SensorPacket full_packet() {
  wire::SensorPacket p;
  p.sequence = 42;
  for (int k = 0; k < 11; ++k) {
    wire::ImuSample s;
    s.sensor_id = static_cast<std::uint8_t>(k);
    s.timestamp_ms = 1000u + 4u * static_cast<std::uint32_t>(k);
    s.accel = {0.01 * k, -0.02, 0.98};
    s.gyro = {1.5, -2.0, 0.3 * k};
    s.orientation = from_axis_angle({0.3, 0.4, 0.866}, 10.0 * k);
    p.samples.push_back(wire::quantize(s));
  }
  return p;
}

void BM_Encode(benchmark::State& state) {
  const auto p = full_packet();
  for (auto _ : state) benchmark::DoNotOptimize(wire::encode(p));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Encode);

void BM_Decode(benchmark::State& state) {
  const auto bytes = wire::encode(full_packet());
  for (auto _ : state) benchmark::DoNotOptimize(wire::decode(bytes));
  state.SetItemsProcessed(state.iterations());
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_Decode);

void BM_IntegrateGyro(benchmark::State& state) {
  Quaternion q;
  for (auto _ : state) {
    q = integrate_gyro(q, {12.0, -30.0, 45.0}, 0.01);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_IntegrateGyro);

void BM_FusionUpdate(benchmark::State& state) {
  fusion::FilterState s = fusion::init_from_accel({0.05, 0.02, 0.99});
  for (auto _ : state) {
    s = fusion::update(s, {1.0, -2.0, 0.5}, {0.05, 0.02, 0.99}, 0.02);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_FusionUpdate);

void BM_ComputePose(benchmark::State& state) {
  const auto p = full_packet();
  const auto topo = default_topology();
  for (auto _ : state) benchmark::DoNotOptimize(hand::compute_pose(p, topo));
}
BENCHMARK(BM_ComputePose);

// One firmware cycle: 11 sensor reads, fusion and packet assembly.
void BM_SimStep(benchmark::State& state) {
  sim::SimConfig c;
  c.noise = imu::NoiseModel::mpu9250_default();
  c.trajectory.kind = sim::TrajectoryKind::kRandomMotion;
  c.battery.capacity_mah = 1e9;
  sim::GloveSim sim(c);
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimStep);

}  // namespace

BENCHMARK_MAIN();
