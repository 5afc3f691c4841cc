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

#include "scplan/ingest/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace scplan::ingest
{

std::string_view to_string(Split split)
{
  switch (split) {
    case Split::Train:
      return "train";
    case Split::Val:
      return "val";
    case Split::Test:
      return "test";
  }
  return "train";
}

Split split_from_string(std::string_view name)
{
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  throw core::InvalidInput("unknown split: " + std::string(name));
}

std::vector<const Transition *> TransitionDataset::of_split(Split split) const
{
  std::vector<const Transition *> out;
  for (const auto & t : transitions) {
    if (t.split == split) out.push_back(&t);
  }
  return out;
}

std::size_t TransitionDataset::count(Split split) const
{
  return static_cast<std::size_t>(std::count_if(
    transitions.begin(), transitions.end(), [split](const auto & t) { return t.split == split; }));
}

TransitionDataset build_transitions(
  const std::vector<TrackRecord> & tracks, const core::Limits & limits, double ttc_cap)
{
  const auto grouped = group_tracks(tracks);
  std::map<std::int64_t, std::vector<const TrackRecord *>> by_frame;
  for (const auto & [id, rows] : grouped) {
    for (const auto & r : rows) by_frame[r.frame].push_back(&r);
  }

  TransitionDataset ds;
  for (const auto & [id, rows] : grouped) {
    const double span = static_cast<double>(rows.back().frame - rows.front().frame);
    const core::Vec2 goal(rows.back().x, rows.back().y);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      if (rows[i + 1].frame != rows[i].frame + 1) continue;
      const core::State s_t = rows[i].state();

      std::vector<std::pair<double, const TrackRecord *>> near;
      for (const auto * other : by_frame.at(rows[i].frame)) {
        if (other->track_id == id) continue;
        near.emplace_back((other->state().position() - s_t.position()).norm(), other);
      }
      std::sort(near.begin(), near.end(), [](const auto & a, const auto & b) {
        return std::pair(a.first, a.second->track_id) < std::pair(b.first, b.second->track_id);
      });
      std::vector<core::State> neighbors;
      for (std::size_t k = 0; k < near.size() && k < kMaxNeighbors; ++k) {
        neighbors.push_back(near[k].second->state());
      }

      FeatureContext ctx;
      ctx.goal = goal;
      ctx.time_fraction =
        span > 0.0 ? static_cast<double>(rows[i + 1].frame - rows.front().frame) / span : 0.0;
      Transition tr;
      tr.track_id = id;
      tr.frame = rows[i].frame;
      tr.s_t = s_t;
      tr.s_next = rows[i + 1].state();
      tr.features = build_features(tr.s_t, tr.s_next, neighbors, limits, ttc_cap, ctx);
      ds.transitions.push_back(tr);
    }
  }
  return ds;
}

TransitionDataset split_dataset(
  TransitionDataset ds, const std::array<double, 3> & fractions, std::uint64_t seed)
{
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0)) throw core::InvalidInput("split_dataset: negative fraction");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw core::InvalidInput("split_dataset: fractions must sum to 1");

  std::set<std::int64_t> unique;
  for (const auto & t : ds.transitions) unique.insert(t.track_id);
  std::vector<std::int64_t> ids(unique.begin(), unique.end());
  const std::size_t n = ids.size();
  const auto wanted = static_cast<std::size_t>(
    std::count_if(fractions.begin(), fractions.end(), [](double f) { return f > 0.0; }));
  if (n < wanted) throw core::InvalidInput("split_dataset: fewer tracks than splits");

  // Plain Fisher-Yates on the sorted ids keeps the result independent of
  // input order and of the standard library's shuffle implementation.
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(ids[i - 1], ids[j]);
  }

  std::array<std::size_t, 3> counts{};
  std::size_t assigned = 0;
  for (int k = 0; k < 2; ++k) {
    counts[k] = std::min(n - assigned, static_cast<std::size_t>(std::llround(fractions[k] * n)));
    assigned += counts[k];
  }
  counts[2] = n - assigned;
  if (fractions[2] == 0.0 && counts[2] > 0) {
    const int target = fractions[1] > 0.0 ? 1 : 0;
    counts[target] += counts[2];
    counts[2] = 0;
  }
  // Every requested split receives at least one track.
  for (int k = 0; k < 3; ++k) {
    if (fractions[k] > 0.0 && counts[k] == 0) {
      const auto largest = std::max_element(counts.begin(), counts.end()) - counts.begin();
      --counts[largest];
      ++counts[k];
    }
  }

  std::map<std::int64_t, Split> assignment;
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    for (std::size_t c = 0; c < counts[k]; ++c) assignment[ids[pos++]] = static_cast<Split>(k);
  }
  for (auto & t : ds.transitions) t.split = assignment.at(t.track_id);
  return ds;
}

}  // namespace scplan::ingest
