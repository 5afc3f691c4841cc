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

#include "scplan/core/constraints.hpp"
#include "scplan/ingest/dataset.hpp"
#include "scplan/ingest/io.hpp"
#include "scplan/ingest/scenarios.hpp"
#include "scplan/ingest/synth.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace scplan::ingest
{
namespace
{

core::Limits policy_limits()
{
  core::Limits lim;
  lim.dt = 0.4;
  return lim;
}

TransitionDataset dataset_with_tracks(std::size_t n_tracks)
{
  TransitionDataset ds;
  for (std::size_t id = 0; id < n_tracks; ++id) {
    for (int f = 0; f < 3; ++f) {
      Transition t;
      t.track_id = static_cast<std::int64_t>(id) * 7 + 3;
      t.frame = f;
      ds.transitions.push_back(t);
    }
  }
  return ds;
}

std::map<std::int64_t, Split> assignment(const TransitionDataset & ds)
{
  std::map<std::int64_t, Split> out;
  for (const auto & t : ds.transitions) {
    const auto [it, inserted] = out.emplace(t.track_id, t.split);
    EXPECT_EQ(it->second, t.split) << "track split across labels";
  }
  return out;
}

std::array<std::size_t, 3> track_counts(const TransitionDataset & ds)
{
  std::array<std::size_t, 3> c{};
  for (const auto & [id, split] : assignment(ds)) ++c[static_cast<int>(split)];
  return c;
}

TEST(SplitDataset, TenTracksDeterministic)
{
  const auto a = split_dataset(dataset_with_tracks(10), {0.8, 0.1, 0.1}, 7);
  const auto b = split_dataset(dataset_with_tracks(10), {0.8, 0.1, 0.1}, 7);
  EXPECT_EQ(track_counts(a), (std::array<std::size_t, 3>{8, 1, 1}));
  EXPECT_EQ(assignment(a), assignment(b));
}

TEST(SplitDataset, AllTrain)
{
  const auto ds = split_dataset(dataset_with_tracks(4), {1.0, 0.0, 0.0}, 1);
  EXPECT_EQ(ds.count(Split::Train), ds.transitions.size());
}

TEST(SplitDataset, HundredTracks)
{
  const auto ds = split_dataset(dataset_with_tracks(100), {0.8, 0.1, 0.1}, 3);
  EXPECT_EQ(track_counts(ds), (std::array<std::size_t, 3>{80, 10, 10}));
  EXPECT_EQ(ds.transitions.size(), 300u);
  EXPECT_EQ(ds.count(Split::Train) + ds.count(Split::Val) + ds.count(Split::Test), 300u);
}

TEST(SplitDataset, OrderIndependent)
{
  auto shuffled = dataset_with_tracks(30);
  std::mt19937_64 rng(5);
  std::shuffle(shuffled.transitions.begin(), shuffled.transitions.end(), rng);
  EXPECT_EQ(
    assignment(split_dataset(shuffled, {0.8, 0.1, 0.1}, 11)),
    assignment(split_dataset(dataset_with_tracks(30), {0.8, 0.1, 0.1}, 11)));
}

TEST(SplitDataset, Errors)
{
  EXPECT_THROW(split_dataset(dataset_with_tracks(2), {0.8, 0.1, 0.1}, 1), core::InvalidInput);
  EXPECT_THROW(split_dataset(dataset_with_tracks(5), {0.8, 0.1, 0.2}, 1), core::InvalidInput);
  const auto small = split_dataset(dataset_with_tracks(3), {0.8, 0.1, 0.1}, 1);
  EXPECT_EQ(track_counts(small), (std::array<std::size_t, 3>{1, 1, 1}));
}

TEST(BuildTransitions, ConsecutiveFramesOnly)
{
  std::vector<TrackRecord> tracks;
  for (int f : {0, 1, 2, 4, 5}) tracks.push_back({1, f, double(f), 0, 1, 0, 0, 0});
  for (int f = 0; f < 6; ++f) tracks.push_back({2, f, 30.0 + f, 0, 1, 0, 0, 0});
  const auto ds = build_transitions(tracks, core::Limits{});
  std::size_t track1 = 0;
  for (const auto & t : ds.transitions) {
    if (t.track_id == 1) {
      ++track1;
      EXPECT_NE(t.frame, 2);
      // The other track is the only neighbour: 30 m gap, no closing.
      EXPECT_DOUBLE_EQ(t.features[kBaseFeatures], 30.0);
      EXPECT_EQ(t.features[ttc_index(0)], kDefaultTtcCap);
    }
    EXPECT_EQ(t.s_next.x - t.s_t.x, 1.0);
  }
  EXPECT_EQ(track1, 3u);
  EXPECT_EQ(ds.transitions.size(), 8u);
}

TEST(Synth, HighwayRightwardLeadMovesForward)
{
  const auto scenarios = synth_scenarios(core::ScenarioKind::HighwayRightward, 1, 0, policy_limits());
  ASSERT_EQ(scenarios.size(), 1u);
  const auto & lead = scenarios[0].lead;
  for (std::size_t t = 1; t < lead.size(); ++t) EXPECT_GT(lead[t].x, lead[t - 1].x);
  for (const auto & s : lead.states()) EXPECT_NEAR(s.y, lead[0].y, 1e-9);
}

TEST(Synth, Deterministic)
{
  const auto a = synth_scenarios(core::ScenarioKind::Roundabout, 5, 1, policy_limits());
  const auto b = synth_scenarios(core::ScenarioKind::Roundabout, 5, 1, policy_limits());
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
  }
}

TEST(Synth, EveryKindIsCandidateAndConsistent)
{
  for (auto kind :
       {core::ScenarioKind::Intersection, core::ScenarioKind::Roundabout,
        core::ScenarioKind::HighwayRightward, core::ScenarioKind::HighwayLeftward}) {
    for (const auto lim : {policy_limits(), core::Limits{}}) {
      const auto scenarios = synth_scenarios(kind, 20, 42, lim);
      ASSERT_EQ(scenarios.size(), 20u);
      for (const auto & s : scenarios) {
        EXPECT_EQ(core::classify_scenario(s), core::ScenarioClass::Candidate);
        EXPECT_EQ(s.kind, kind);
        ASSERT_TRUE(s.reference.has_value());
        // The recorded expert path itself passes every hard constraint.
        EXPECT_TRUE(core::check_hard_constraints(*s.reference, s, 1e-9).empty()) << s.id;
        for (const auto & st : s.lead.states()) {
          EXPECT_LE(st.velocity().norm(), lim.v_max);
          EXPECT_LE(st.acceleration().norm(), lim.a_max);
        }
      }
    }
  }
}

TEST(Synth, DefaultHorizonSpansTwentySeconds)
{
  const auto s = synth_scenarios(core::ScenarioKind::Intersection, 1, 2, policy_limits());
  EXPECT_EQ(s[0].reference->horizon(), 50u);
  EXPECT_NEAR(s[0].reference->duration(), 20.0, 1e-12);
}

TEST(Synth, TracksRoundTripThroughCsvAndExtraction)
{
  const auto rec = synth_tracks(core::ScenarioKind::Intersection, 6, 9, policy_limits());
  std::istringstream in(serialize_tracks(rec.records));
  const auto parsed = parse_tracks(in, rec.meta);
  PairingConfig pairing;
  pairing.kind = core::ScenarioKind::Intersection;
  pairing.limits = policy_limits();
  const auto extracted = extract_scenarios(parsed, rec.meta, pairing);
  const auto direct = synth_scenarios(core::ScenarioKind::Intersection, 6, 9, policy_limits());
  ASSERT_EQ(extracted.scenarios.size(), direct.size());
  EXPECT_EQ(extracted.skipped.size(), 6u);
  for (std::size_t i = 0; i < direct.size(); ++i) {
    EXPECT_EQ(to_json(extracted.scenarios[i]).dump(), to_json(direct[i]).dump());
  }
}

TEST(Io, TransitionsRoundTrip)
{
  const auto rec = synth_tracks(core::ScenarioKind::HighwayLeftward, 3, 4, policy_limits());
  const auto ds = split_dataset(build_transitions(rec.records, policy_limits()), {0.8, 0.1, 0.1}, 2);
  std::istringstream in(write_transitions(ds));
  const auto back = read_transitions(in);
  ASSERT_EQ(back.transitions.size(), ds.transitions.size());
  for (std::size_t i = 0; i < ds.transitions.size(); ++i) {
    EXPECT_EQ(back.transitions[i].s_t, ds.transitions[i].s_t);
    EXPECT_EQ(back.transitions[i].features, ds.transitions[i].features);
    EXPECT_EQ(back.transitions[i].split, ds.transitions[i].split);
  }
}

TEST(Io, ScenarioRoundTrip)
{
  const auto s = synth_scenarios(core::ScenarioKind::Roundabout, 1, 8, policy_limits())[0];
  const auto back = scenario_from_json(Json::parse(to_json(s).dump()));
  EXPECT_EQ(to_json(back).dump(), to_json(s).dump());
  EXPECT_EQ(back.lead.states(), s.lead.states());
}

}  // namespace
}  // namespace scplan::ingest
