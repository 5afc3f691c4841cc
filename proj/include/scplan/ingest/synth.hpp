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

#ifndef SCPLAN__INGEST__SYNTH_HPP_
#define SCPLAN__INGEST__SYNTH_HPP_

#include "scplan/core/types.hpp"
#include "scplan/ingest/tracks.hpp"

#include <cstdint>
#include <vector>

namespace scplan::ingest
{

constexpr std::size_t kDefaultSynthSteps = 50;

/// Ego/lead track pairs laid out as a recording: pair k uses track ids 2k (ego)
/// and 2k+1 (lead) and its own frame window, so pairs never overlap in time.
struct SynthRecording
{
  std::vector<TrackRecord> records;
  RecordingMeta meta;
};

/// Both vehicles follow the same path (straight line, quarter-arc turn, or
/// circular arc depending on `kind`), the ego lagging the lead by a few
/// seconds. Tracks are rolled out with step_kinematics, so they satisfy the
/// discrete dynamics exactly, and every pair classifies as Candidate.
SynthRecording synth_tracks(
  core::ScenarioKind kind, std::size_t n, std::uint64_t seed, const core::Limits & limits,
  std::size_t steps = kDefaultSynthSteps);

/// Scenarios built from the same pairs as synth_tracks, with the ego's track
/// as reference.
std::vector<core::Scenario> synth_scenarios(
  core::ScenarioKind kind, std::size_t n, std::uint64_t seed, const core::Limits & limits,
  std::size_t steps = kDefaultSynthSteps);

}  // namespace scplan::ingest

#endif  // SCPLAN__INGEST__SYNTH_HPP_
