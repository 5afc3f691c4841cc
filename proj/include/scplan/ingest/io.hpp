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

#ifndef SCPLAN__INGEST__IO_HPP_
#define SCPLAN__INGEST__IO_HPP_

#include "scplan/core/types.hpp"
#include "scplan/ingest/dataset.hpp"

#include "json.hpp"

#include <istream>
#include <string>
#include <vector>

namespace scplan::ingest
{

using Json = nlohmann::ordered_json;

Json to_json(const core::State & s);
core::State state_from_json(const Json & j);

/// {"dt": ..., "states": [[x, y, vx, vy, ax, ay], ...]}
Json to_json(const core::Trajectory & traj);
core::Trajectory trajectory_from_json(const Json & j);

Json to_json(const core::Limits & limits);
core::Limits limits_from_json(const Json & j, const core::Limits & defaults = {});

Json to_json(const core::Scenario & scenario);
core::Scenario scenario_from_json(const Json & j);

/// One NDJSON line: {track_id, frame, s_t, s_next, features, split}.
std::string transition_line(const Transition & t);
Transition transition_from_json(const Json & j);

std::string write_transitions(const TransitionDataset & ds);
TransitionDataset read_transitions(std::istream & in);

}  // namespace scplan::ingest

#endif  // SCPLAN__INGEST__IO_HPP_
