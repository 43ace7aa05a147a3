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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "glove/errors.hpp"
#include "glove/glove_sim.hpp"

namespace glove::driver {
namespace {

using namespace std::chrono_literals;

std::vector<std::uint8_t> encoded(std::uint32_t seq, std::size_t samples = 2) {
  wire::SensorPacket p;
  p.sequence = seq;
  for (std::size_t k = 0; k < samples; ++k) {
    wire::ImuSample s;
    s.sensor_id = static_cast<std::uint8_t>(k);
    s.timestamp_ms = seq * 10 + static_cast<std::uint32_t>(k);
    s.accel = {0, 0, 1};
    p.samples.push_back(s);
  }
  return wire::encode(p);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("glove_driver_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(SessionIngest, HundredPackets) {
  Session s;
  for (std::uint32_t i = 0; i < 100; ++i) EXPECT_TRUE(s.ingest(i * 50.0, encoded(i)));
  EXPECT_EQ(s.received(), 100u);
  EXPECT_EQ(s.malformed(), 0u);
  for (std::uint32_t i = 0; i < 100; ++i) {
    auto a = s.next(10ms);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->packet.sequence, i);
    EXPECT_EQ(a->payload, encoded(i));
  }
  EXPECT_FALSE(s.next(1ms));
}

TEST(SessionIngest, GarbageCountedAndSkipped) {
  Session s;
  for (std::uint32_t i = 0; i < 100; ++i) {
    if (i == 40) {
      const std::vector<std::uint8_t> junk = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
      EXPECT_FALSE(s.ingest(i * 50.0, junk));
    }
    s.ingest(i * 50.0, encoded(i));
  }
  EXPECT_EQ(s.malformed(), 1u);
  EXPECT_EQ(s.received(), 100u);
  const SessionStats st = s.stats();
  EXPECT_EQ(st.malformed, 1u);
  EXPECT_EQ(st.packets_lost, 0u);
  EXPECT_EQ(st.per_sensor_samples.at(0), 100u);
}

TEST(SessionIngest, SourceDropsCountedAsLost) {
  Session s;
  for (std::uint32_t i = 0; i < 100; ++i) {
    if (i >= 5 && i <= 7) continue;
    s.ingest(i * 50.0, encoded(i));
  }
  EXPECT_EQ(s.stats().packets_lost, 3u);
  EXPECT_EQ(s.stats().packets_received, 97u);
}

TEST(SessionIngest, QueueOverrunDropsOldest) {
  Session s(10);
  for (std::uint32_t i = 0; i < 25; ++i) s.ingest(i * 100.0, encoded(i));
  EXPECT_EQ(s.consumer_drops(), 15u);
  EXPECT_EQ(s.next(1ms)->packet.sequence, 15u);
  const SessionStats st = s.stats();
  EXPECT_EQ(st.consumer_drops, 15u);
  EXPECT_EQ(st.packets_lost, 0u);
}

TEST(SequenceTrackerTest, ReorderedPacketReconciles) {
  SequenceTracker t;
  for (std::uint32_t seq : {0u, 1u, 3u, 2u, 4u}) t.observe(seq);
  EXPECT_EQ(t.lost(), 0u);
  EXPECT_EQ(t.reordered(), 1u);
  EXPECT_EQ(t.received(), 5u);
  t.observe(4);
  EXPECT_EQ(t.duplicates(), 1u);
}

TEST(SequenceTrackerTest, LostPlusReceivedSpansRange) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    SequenceTracker t;
    std::bernoulli_distribution drop(std::uniform_real_distribution<double>(0, 0.5)(rng));
    const std::uint32_t first = std::uniform_int_distribution<std::uint32_t>(0, 1'000'000)(rng);
    const std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(1, 3000)(rng);
    t.observe(first);
    std::uint32_t last = first;
    for (std::uint32_t k = 1; k < n; ++k) {
      if (drop(rng)) continue;
      t.observe(first + k);
      last = first + k;
    }
    EXPECT_EQ(t.lost() + t.received(), static_cast<std::uint64_t>(last - first) + 1);
    EXPECT_EQ(*t.highest(), last);
  }
}

TEST(WindowRates, ConstantTwentyHz) {
  std::vector<double> t;
  for (int i = 0; i < 201; ++i) t.push_back(i * 50.0);
  const RateStats r = window_rates(t);
  EXPECT_EQ(r.windows, 10u);
  EXPECT_DOUBLE_EQ(r.mean_hz, 20.0);
  EXPECT_DOUBLE_EQ(r.sd_hz, 0.0);
}

TEST(WindowRates, AlternatingTenAndThirty) {
  std::vector<double> t;
  for (int w = 0; w < 10; ++w) {
    const int n = w % 2 == 0 ? 10 : 30;
    for (int i = 0; i < n; ++i) t.push_back(w * 1000.0 + i * (1000.0 / n));
  }
  t.push_back(10'000.0);
  const RateStats r = window_rates(t);
  EXPECT_DOUBLE_EQ(r.mean_hz, 20.0);
  EXPECT_DOUBLE_EQ(r.sd_hz, 10.0);
}

TEST(WindowRates, TooShort) {
  const std::vector<double> t = {0, 500, 1999};
  EXPECT_THROW(window_rates(t), TooShort);
  EXPECT_THROW(window_rates({}), TooShort);
  Session s;
  s.ingest(0, encoded(0));
  EXPECT_THROW(s.stats(), TooShort);
}

TEST(StatsJson, Fields) {
  Session s;
  for (std::uint32_t i = 0; i < 100; ++i) s.ingest(i * 50.0, encoded(i));
  const std::string j = s.stats().to_json();
  for (const char* key : {"packets_received", "packets_lost", "rate_mean_hz", "rate_sd_hz", "duration_s",
                          "per_sensor_samples", "malformed", "consumer_drops"}) {
    EXPECT_NE(j.find(key), std::string::npos) << key;
  }
}

Recording sample_recording(std::size_t frames = 50) {
  Recording r;
  r.start_epoch_ms = 1'760'000'000'000ull;
  for (std::uint32_t i = 0; i < frames; ++i) r.frames.push_back({i * 46u, encoded(i, 11)});
  return r;
}

TEST(RecordingFormat, HeaderLayout) {
  const auto bytes = serialize_recording(sample_recording(1));
  ASSERT_EQ(bytes.size(), 16u + 6u + wire::encoded_size(11));
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "GLVR");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[6], 0);
  EXPECT_EQ(bytes[7], 0);
  std::uint64_t epoch = 0;
  for (int i = 0; i < 8; ++i) epoch |= static_cast<std::uint64_t>(bytes[8 + i]) << (8 * i);
  EXPECT_EQ(epoch, 1'760'000'000'000ull);
  EXPECT_EQ(bytes[20] | (bytes[21] << 8), static_cast<int>(wire::encoded_size(11)));
}

TEST(RecordingFormat, FileRoundTripIsLossless) {
  const Recording r = sample_recording();
  const auto path = temp_path("roundtrip.glvr");
  write_recording(path, r);
  const Recording back = read_recording(path);
  EXPECT_EQ(back.start_epoch_ms, r.start_epoch_ms);
  EXPECT_EQ(back.frames, r.frames);
  std::filesystem::remove(path);
}

TEST(RecordingFormat, StreamingWriterMatchesBatch) {
  const Recording r = sample_recording();
  const auto path = temp_path("writer.glvr");
  {
    RecordingWriter w(path, r.start_epoch_ms);
    for (const auto& f : r.frames) w.append(f.arrival_offset_ms, f.payload);
    w.flush();
  }
  std::ifstream in(path, std::ios::binary);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(bytes, serialize_recording(r));
  std::filesystem::remove(path);
}

TEST(RecordingFormat, TruncationReportsOffset) {
  const auto bytes = serialize_recording(sample_recording(3));
  for (std::size_t cut : {std::size_t{2}, std::size_t{10}, std::size_t{19}, bytes.size() - 1}) {
    try {
      parse_recording(std::span(bytes).first(cut));
      FAIL() << "cut " << cut;
    } catch (const RecordingCorrupt& e) {
      EXPECT_LE(e.offset(), cut);
    }
  }
  // frame boundary cuts are valid prefixes
  const std::size_t one_frame = 16 + 6 + wire::encoded_size(11);
  EXPECT_EQ(parse_recording(std::span(bytes).first(one_frame)).frames.size(), 1u);
}

TEST(RecordingFormat, CorruptionDetected) {
  auto bytes = serialize_recording(sample_recording(3));
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(parse_recording(bad), RecordingCorrupt);
  bad = bytes;
  bad[4] = 9;
  EXPECT_THROW(parse_recording(bad), RecordingCorrupt);
  bad = bytes;
  bad[16 + 6] = 'Z';  // first payload magic
  const Recording r = parse_recording(bad);
  try {
    decode_recording(r);
    FAIL();
  } catch (const RecordingCorrupt& e) {
    EXPECT_EQ(e.offset(), 22u);
  }
}

TEST(RecordingFormat, FuzzNeverCrashes) {
  const auto good = serialize_recording(sample_recording(4));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    auto b = good;
    const int flips = std::uniform_int_distribution<int>(1, 8)(rng);
    for (int k = 0; k < flips; ++k) {
      b[std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng)] = static_cast<std::uint8_t>(rng());
    }
    b.resize(std::uniform_int_distribution<std::size_t>(0, b.size())(rng));
    try {
      decode_recording(parse_recording(b));
    } catch (const RecordingCorrupt&) {
    }
  }
}

TEST(Replay, SpeedOneReproducesPayloads) {
  const Recording r = sample_recording(20);
  std::vector<wire::SensorPacket> seen;
  const auto wall = replay(r, 1.0, [&](const ReplayedPacket& p) { seen.push_back(p.packet); });
  ASSERT_EQ(seen.size(), r.frames.size());
  for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(wire::encode(seen[i]), r.frames[i].payload);
  EXPECT_NEAR(wall.count(), 19 * 46.0, 0.05 * 19 * 46.0);
}

TEST(Replay, SpeedTwoHalvesDuration) {
  const Recording r = sample_recording(40);
  const auto d1 = replay(r, 1.0, [](const ReplayedPacket&) {});
  const auto d2 = replay(r, 2.0, [](const ReplayedPacket&) {});
  EXPECT_NEAR(d2.count() / d1.count(), 0.5, 0.05 * 0.5);
}

TEST(ExportCsv, HeaderAndRows) {
  const Recording r = sample_recording(3);
  std::ostringstream out;
  EXPECT_EQ(export_csv(r, out), 33u);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t_ms,sensor_id,ax,ay,az,gx,gy,gz,qw,qx,qy,qz");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0,0,0,1,0,0,0,1,0,0,0");
  int rows = 1;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11);
  }
  EXPECT_EQ(rows, 33);
}

TEST(ToRecording, ArrivalsBecomeMonotoneFrames) {
  std::vector<Arrival> arrivals;
  for (std::uint32_t i = 0; i < 5; ++i) {
    Arrival a;
    a.arrival_ms = i == 3 ? 10.0 : 100.0 * i;  // clock step backwards is clamped
    a.payload = encoded(i);
    a.packet = wire::decode(a.payload);
    arrivals.push_back(a);
  }
  const Recording r = to_recording(arrivals, 7);
  ASSERT_EQ(r.frames.size(), 5u);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_GE(r.frames[i].arrival_offset_ms, r.frames[i - 1].arrival_offset_ms);
  EXPECT_EQ(parse_recording(serialize_recording(r)).frames, r.frames);
}

TEST(UdpLoopback, SimulatorToReceiver) {
  Session session;
  auto rx = listen(session, 0);
  sim::SimConfig cfg;
  cfg.timing.loss_prob = 0.05;
  sim::UdpSink sink("127.0.0.1", rx->port());
  const sim::SessionLog log = sim::run(cfg, {.duration_ms = 5'000}, &sink);
  sink.flush();
  const auto deadline = std::chrono::steady_clock::now() + 2s;
  while (session.received() < log.packets.size() && std::chrono::steady_clock::now() < deadline) {
    std::this_thread::sleep_for(5ms);
  }
  rx->stop();
  EXPECT_EQ(session.received(), log.packets.size());
  std::uint32_t prev = 0;
  bool first = true;
  while (auto a = session.next(1ms)) {
    if (!first) {
      EXPECT_GT(a->packet.sequence, prev);
    }
    prev = a->packet.sequence;
    first = false;
  }
}

TEST(UdpLoopback, PortInUse) {
  net::UdpSocket holder;
  holder.bind("0.0.0.0", 0);
  Session s;
  EXPECT_THROW(UdpReceiver(s, holder.local_port()), NetworkError);
}

}  // namespace
}  // namespace glove::driver
