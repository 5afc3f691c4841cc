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

#ifndef SCPLAN__INGEST__SCENARIOS_HPP_
#define SCPLAN__INGEST__SCENARIOS_HPP_

#include "scplan/core/types.hpp"
#include "scplan/ingest/tracks.hpp"

#include <string>
#include <vector>

namespace scplan::ingest
{

struct PairingConfig
{
  core::ScenarioKind kind{core::ScenarioKind::Intersection};
  /// For highway recordings: pick rightward/leftward from the ego's travel.
  bool highway_auto_direction{false};
  /// dt is replaced by the recording's frame interval.
  core::Limits limits{};
  double goal_tol{0.0};
  std::size_t min_shared_frames{2};
};

struct SkipReport
{
  std::int64_t track_id;
  std::string reason;
};

struct Extraction
{
  std::vector<core::Scenario> scenarios;
  std::vector<SkipReport> skipped;
};

/// Pairs each ego track with the nearest co-temporal track ahead of it along
/// its heading at the first shared frame. The ego's recorded path over the
/// shared window becomes the scenario reference.
Extraction extract_scenarios(
  const std::vector<TrackRecord> & tracks, const RecordingMeta & meta,
  const PairingConfig & pairing);

}  // namespace scplan::ingest

#endif  // SCPLAN__INGEST__SCENARIOS_HPP_
