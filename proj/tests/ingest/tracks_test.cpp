// Copyright 2026 The scplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scplan/ingest/scenarios.hpp"
#include "scplan/ingest/tracks.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace scplan::ingest
{
namespace
{

std::vector<TrackRecord> parse(const std::string & text, const RecordingMeta & meta = {})
{
  std::istringstream in(text);
  return parse_tracks(in, meta);
}

TEST(ParseTracks, TwoRowFile)
{
  const auto rows = parse(
    "trackId,frame,xCenter,yCenter,xVelocity,yVelocity,xAcceleration,yAcceleration\n"
    "0,1,1.5,2,3,4,5,6\n"
    "0,0,0,0,0,0,0,0\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].frame, 0);
  EXPECT_EQ(rows[1].frame, 1);
  EXPECT_DOUBLE_EQ(rows[1].x, 1.5);
  EXPECT_DOUBLE_EQ(rows[1].ay, 6.0);
}

TEST(ParseTracks, SortsByTrackThenFrame)
{
  const auto rows = parse(
    "frame,trackId,x,y,xVelocity,yVelocity,xAcceleration,yAcceleration,laneId\n"
    "3,2,0,0,0,0,0,0,7\n"
    "1,2,0,0,0,0,0,0,7\n"
    "2,1,0,0,0,0,0,0,7\n"
    "0,2,0,0,0,0,0,0,7\n");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].track_id, 1);
  EXPECT_EQ(rows[1].frame, 0);
  EXPECT_EQ(rows[2].frame, 1);
  EXPECT_EQ(rows[3].frame, 3);
}

TEST(ParseTracks, MissingColumnNamesIt)
{
  try {
    parse("trackId,frame,xCenter,yCenter,yVelocity,xAcceleration,yAcceleration\n0,0,0,0,0,0,0\n");
    FAIL() << "expected a schema error";
  } catch (const SchemaError & e) {
    EXPECT_EQ(e.column(), "xVelocity");
    EXPECT_NE(std::string(e.what()).find("xVelocity"), std::string::npos);
  }
}

TEST(ParseTracks, UnparsableNumberReportsLine)
{
  try {
    parse(
      "trackId,frame,xCenter,yCenter,xVelocity,yVelocity,xAcceleration,yAcceleration\n"
      "0,0,0,0,0,0,0,0\n"
      "0,1,0,abc,0,0,0,0\n");
    FAIL() << "expected a row error";
  } catch (const RowError & e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseTracks, DuplicateFrameRejected)
{
  EXPECT_THROW(
    parse(
      "trackId,frame,xCenter,yCenter,xVelocity,yVelocity,xAcceleration,yAcceleration\n"
      "0,0,0,0,0,0,0,0\n0,0,1,0,0,0,0,0\n"),
    RowError);
}

TEST(ParseTracks, SerializeRoundTrip)
{
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  std::uniform_int_distribution<int> frames(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TrackRecord> records;
    for (std::int64_t id = 0; id < 4; ++id) {
      std::int64_t frame = frames(rng);
      for (int k = 0; k < 20; ++k) {
        frame += 1 + frames(rng);
        records.push_back({id, frame, u(rng), u(rng), u(rng) * 1e-7, u(rng), 1.0 / 3.0, -0.1});
      }
    }
    EXPECT_EQ(parse(serialize_tracks(records)), records);
  }
}

TEST(ParseMeta, KeyValueLines)
{
  std::istringstream in("# comment\nframeRate = 25\nrecordingId=07\nother=1\n");
  const auto meta = parse_meta(in);
  EXPECT_DOUBLE_EQ(meta.frame_rate, 25.0);
  EXPECT_EQ(meta.recording_id, "07");
  EXPECT_DOUBLE_EQ(meta.frame_interval(), 0.04);
}

std::vector<TrackRecord> straight_track(
  std::int64_t id, double x0, double y0, double vx, int n, std::int64_t first_frame = 0)
{
  std::vector<TrackRecord> out;
  for (int k = 0; k < n; ++k) {
    out.push_back({id, first_frame + k, x0 + vx * 0.04 * k, y0, vx, 0.0, 0.0, 0.0});
  }
  return out;
}

TEST(ExtractScenarios, ParallelTracksPairWithFront)
{
  auto tracks = straight_track(1, 0.0, 0.0, 10.0, 30);
  const auto b = straight_track(2, 20.0, 0.0, 10.0, 30);
  tracks.insert(tracks.end(), b.begin(), b.end());
  const RecordingMeta meta{25.0, "r"};
  const auto result = extract_scenarios(tracks, meta, PairingConfig{});
  ASSERT_EQ(result.scenarios.size(), 1u);
  const auto & s = result.scenarios[0];
  EXPECT_EQ(s.id, "r_1_2");
  EXPECT_DOUBLE_EQ(s.ego_init.x, 0.0);
  EXPECT_DOUBLE_EQ(s.lead.front().x, 20.0);
  EXPECT_DOUBLE_EQ(s.goal.x(), 10.0 * 0.04 * 29);
  EXPECT_EQ(s.lead.dt(), 1.0 / 25.0);
  EXPECT_EQ(s.limits.dt, s.lead.dt());
  ASSERT_TRUE(s.reference.has_value());
  EXPECT_EQ(s.reference->size(), 30u);
  ASSERT_EQ(result.skipped.size(), 1u);
  EXPECT_EQ(result.skipped[0].track_id, 2);
}

TEST(ExtractScenarios, SingleTrackIsSkipped)
{
  const auto result = extract_scenarios(straight_track(4, 0, 0, 5, 10), RecordingMeta{}, PairingConfig{});
  EXPECT_TRUE(result.scenarios.empty());
  ASSERT_EQ(result.skipped.size(), 1u);
  EXPECT_EQ(result.skipped[0].track_id, 4);
}

TEST(ExtractScenarios, NearestOfTwoAhead)
{
  auto tracks = straight_track(1, 0.0, 0.0, 10.0, 10);
  for (const auto & extra :
       {straight_track(2, 30.0, 4.0, 10.0, 10), straight_track(3, 25.0, -12.0, 10.0, 10),
        straight_track(5, -3.0, 0.0, 10.0, 10)}) {
    tracks.insert(tracks.end(), extra.begin(), extra.end());
  }
  // Hand distances at the first frame: track 2 -> sqrt(916), track 3 -> sqrt(769).
  const auto result = extract_scenarios(tracks, RecordingMeta{}, PairingConfig{});
  bool found = false;
  for (const auto & s : result.scenarios) {
    if (s.id == "00_1_3") found = true;
    EXPECT_NE(s.id, "00_1_2");
  }
  EXPECT_TRUE(found);
}

TEST(ExtractScenarios, SharedWindowOnly)
{
  auto tracks = straight_track(1, 0.0, 0.0, 10.0, 20, 0);
  const auto b = straight_track(2, 40.0, 0.0, 10.0, 20, 5);
  tracks.insert(tracks.end(), b.begin(), b.end());
  const auto result = extract_scenarios(tracks, RecordingMeta{}, PairingConfig{});
  ASSERT_EQ(result.scenarios.size(), 1u);
  EXPECT_EQ(result.scenarios[0].lead.size(), 15u);
  EXPECT_DOUBLE_EQ(result.scenarios[0].ego_init.x, 10.0 * 0.04 * 5);
}

}  // namespace
}  // namespace scplan::ingest
