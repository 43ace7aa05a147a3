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

#include "glove/topology.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "glove/errors.hpp"

namespace glove {
namespace {

TEST(DefaultTopology, ElevenSensorsOnSixLanes) {
  const SensorTopology t = default_topology();
  ASSERT_EQ(t.sensors.size(), 11u);
  std::map<int, int> per_lane;
  for (const auto& e : t.sensors) ++per_lane[e.lane];
  EXPECT_EQ(per_lane.size(), 6u);
  EXPECT_EQ(per_lane.at(t.find(0)->lane), 1);
  for (int lane = 1; lane <= 5; ++lane) EXPECT_EQ(per_lane.at(lane), 2) << "lane " << lane;
  EXPECT_TRUE(validate(t).empty());
}

TEST(DefaultTopology, Layout) {
  const SensorTopology t = default_topology();
  EXPECT_TRUE(t.find(0)->segment.hand_back);
  EXPECT_EQ(t.find(0)->lane, 0);
  const SensorEntry* index_prox = t.find(SegmentLabel::phalanx_of(Finger::kIndex, Phalanx::kProximal));
  ASSERT_NE(index_prox, nullptr);
  EXPECT_EQ(index_prox->sensor_id, 3);
  EXPECT_EQ(index_prox->lane, 2);
  EXPECT_EQ(index_prox->address, Address::kA);
  const SensorEntry* little_int = t.find(SegmentLabel::phalanx_of(Finger::kLittle, Phalanx::kIntermediate));
  EXPECT_EQ(little_int->sensor_id, 10);
  EXPECT_EQ(little_int->lane, 5);
  EXPECT_EQ(little_int->address, Address::kB);
}

TEST(ReadOrder, LaneThenAddress) {
  SensorTopology t = default_topology();
  std::reverse(t.sensors.begin(), t.sensors.end());
  const auto order = t.read_order();
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(order[i].sensor_id, static_cast<int>(i));
}

TEST(Validate, LaneOverflow) {
  SensorTopology t = default_topology();
  t.sensors.push_back({11, 2, Address::kA, SegmentLabel::back()});
  const auto v = validate(t);
  EXPECT_NE(std::find(v.begin(), v.end(), "lane 2 has 3 > 2 sensors"), v.end());
}

TEST(Validate, LaneOutOfRange) {
  SensorTopology t;
  t.sensors.push_back({0, 6, Address::kA, SegmentLabel::back()});
  const auto v = validate(t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("lane out of range"), std::string::npos);
}

TEST(Validate, Duplicates) {
  SensorTopology t = default_topology();
  t.sensors[2].sensor_id = 1;  // duplicate id
  t.sensors[4].segment = t.sensors[3].segment;
  const auto v = validate(t);
  auto has = [&](const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
  };
  EXPECT_TRUE(has("duplicate id"));
  EXPECT_TRUE(has("duplicate segment"));
}

TEST(Validate, DuplicateAddressOnLane) {
  SensorTopology t = default_topology();
  t.sensors[2].address = Address::kA;
  const auto v = validate(t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("duplicate address A on lane 1"), std::string::npos);
}

TEST(Validate, IdRange) {
  SensorTopology t;
  t.sensors.push_back({255, 0, Address::kA, SegmentLabel::back()});
  EXPECT_EQ(validate(t).size(), 1u);
}

TEST(LoadTopology, RoundTripDefault) {
  for (Handedness h : {Handedness::kRight, Handedness::kLeft}) {
    const SensorTopology t = default_topology(h);
    const SensorTopology back = load_topology(serialize_topology(t));
    EXPECT_EQ(back.handedness, h);
    ASSERT_EQ(back.sensors.size(), t.sensors.size());
    for (std::size_t i = 0; i < t.sensors.size(); ++i) {
      EXPECT_EQ(back.sensors[i].sensor_id, t.sensors[i].sensor_id);
      EXPECT_EQ(back.sensors[i].lane, t.sensors[i].lane);
      EXPECT_EQ(back.sensors[i].address, t.sensors[i].address);
      EXPECT_TRUE(back.sensors[i].segment == t.sensors[i].segment);
    }
  }
}

TEST(LoadTopology, RoundTripRandomValidSubsets) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    SensorTopology t = default_topology(trial % 2 ? Handedness::kLeft : Handedness::kRight);
    std::shuffle(t.sensors.begin(), t.sensors.end(), rng);
    t.sensors.resize(std::uniform_int_distribution<std::size_t>(0, t.sensors.size())(rng));
    for (auto& e : t.sensors) e.sensor_id += 100;
    ASSERT_TRUE(validate(t).empty());
    EXPECT_EQ(serialize_topology(load_topology(serialize_topology(t))), serialize_topology(t));
  }
}

TEST(LoadTopology, MissingLaneNamesField) {
  const char* doc = R"({"version":1,"handedness":"right","sensors":[{"id":0,"address":"A","segment":"hand_back"}]})";
  try {
    load_topology(doc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("\"lane\""), std::string::npos) << e.what();
  }
}

TEST(LoadTopology, TwelveSensorsInvalid) {
  std::string doc = R"({"version":1,"handedness":"right","sensors":[)";
  const char* segs[] = {"hand_back",       "thumb/proximal", "thumb/intermediate",  "index/proximal",
                        "index/intermediate", "middle/proximal", "middle/intermediate", "ring/proximal",
                        "ring/intermediate",  "little/proximal", "little/intermediate", "hand_back"};
  for (int i = 0; i < 12; ++i) {
    if (i) doc += ",";
    doc += R"({"id":)" + std::to_string(i) + R"(,"lane":)" + std::to_string(i / 2) + R"(,"address":")" +
           (i % 2 ? "B" : "A") + R"(","segment":")" + segs[i] + "\"}";
  }
  doc += "]}";
  EXPECT_THROW(load_topology(doc), TopologyInvalid);
}

TEST(LoadTopology, ParseErrors) {
  EXPECT_THROW(load_topology("{not json"), ConfigError);
  EXPECT_THROW(load_topology(R"({"version":2,"sensors":[]})"), ConfigError);
  EXPECT_THROW(load_topology(R"({"version":1,"sensors":[{"id":0,"lane":0,"address":"C","segment":"hand_back"}]})"),
               ConfigError);
  EXPECT_THROW(load_topology(R"({"version":1,"sensors":[{"id":0,"lane":0,"address":"A","segment":"toe"}]})"),
               ConfigError);
}

TEST(Segments, ParseAndPrint) {
  for (const auto& e : default_topology().sensors) {
    const auto parsed = parse_segment(to_string(e.segment));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_TRUE(*parsed == e.segment);
  }
  EXPECT_FALSE(parse_segment("index/distal").has_value());
}

}  // namespace
}  // namespace glove
