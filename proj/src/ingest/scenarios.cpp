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

#include <algorithm>
#include <optional>

namespace scplan::ingest
{
namespace
{

using core::State;
using core::Vec2;

struct Window
{
  std::int64_t first;
  std::int64_t last;
};

// Shared frame window; empty unless both tracks cover every frame in it.
std::optional<Window> shared_window(
  const std::vector<TrackRecord> & a, const std::vector<TrackRecord> & b)
{
  const std::int64_t first = std::max(a.front().frame, b.front().frame);
  const std::int64_t last = std::min(a.back().frame, b.back().frame);
  if (last < first) return std::nullopt;
  const auto covers = [&](const std::vector<TrackRecord> & rows) {
    const auto lo = std::lower_bound(
      rows.begin(), rows.end(), first, [](const auto & r, std::int64_t f) { return r.frame < f; });
    const auto hi = std::upper_bound(
      rows.begin(), rows.end(), last, [](std::int64_t f, const auto & r) { return f < r.frame; });
    return hi - lo == last - first + 1;
  };
  if (!covers(a) || !covers(b)) return std::nullopt;
  return Window{first, last};
}

std::vector<State> states_in(const std::vector<TrackRecord> & rows, const Window & w)
{
  std::vector<State> out;
  for (const auto & r : rows) {
    if (r.frame >= w.first && r.frame <= w.last) out.push_back(r.state());
  }
  return out;
}

const TrackRecord & at_frame(const std::vector<TrackRecord> & rows, std::int64_t frame)
{
  return *std::lower_bound(
    rows.begin(), rows.end(), frame, [](const auto & r, std::int64_t f) { return r.frame < f; });
}

}  // namespace

Extraction extract_scenarios(
  const std::vector<TrackRecord> & tracks, const RecordingMeta & meta,
  const PairingConfig & pairing)
{
  const auto grouped = group_tracks(tracks);
  const double dt = meta.frame_interval();
  core::Limits limits = pairing.limits;
  limits.dt = dt;

  Extraction out;
  for (const auto & [ego_id, ego_rows] : grouped) {
    std::optional<std::int64_t> best_id;
    std::optional<Window> best_window;
    double best_dist = 0.0;
    for (const auto & [other_id, other_rows] : grouped) {
      if (other_id == ego_id) continue;
      const auto window = shared_window(ego_rows, other_rows);
      if (!window) continue;
      if (static_cast<std::size_t>(window->last - window->first + 1) < pairing.min_shared_frames) {
        continue;
      }
      const State ego0 = at_frame(ego_rows, window->first).state();
      const State other0 = at_frame(other_rows, window->first).state();
      Vec2 heading = ego0.velocity();
      if (heading.norm() < 1e-6) {
        heading = at_frame(ego_rows, window->last).state().position() - ego0.position();
      }
      if (heading.norm() < 1e-9) continue;
      const Vec2 rel = other0.position() - ego0.position();
      if (rel.dot(heading) <= 0.0) continue;
      const double dist = rel.norm();
      if (!best_id || dist < best_dist) {
        best_id = other_id;
        best_window = window;
        best_dist = dist;
      }
    }
    if (!best_id) {
      out.skipped.push_back({ego_id, "no co-temporal track ahead"});
      continue;
    }

    auto ego_states = states_in(ego_rows, *best_window);
    auto lead_states = states_in(grouped.at(*best_id), *best_window);
    core::ScenarioKind kind = pairing.kind;
    if (pairing.highway_auto_direction) {
      kind = ego_states.back().x >= ego_states.front().x ? core::ScenarioKind::HighwayRightward
                                                         : core::ScenarioKind::HighwayLeftward;
    }
    const State init = ego_states.front();
    const Vec2 goal = ego_states.back().position();
    out.scenarios.push_back(core::Scenario{
      meta.recording_id + "_" + std::to_string(ego_id) + "_" + std::to_string(*best_id), init,
      goal, pairing.goal_tol, core::Trajectory(std::move(lead_states), dt), limits, kind,
      core::Trajectory(std::move(ego_states), dt)});
  }
  return out;
}

}  // namespace scplan::ingest
