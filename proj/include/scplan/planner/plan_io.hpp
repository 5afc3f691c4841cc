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

#ifndef SCPLAN__PLANNER__PLAN_IO_HPP_
#define SCPLAN__PLANNER__PLAN_IO_HPP_

#include "scplan/ingest/io.hpp"
#include "scplan/planner/scp.hpp"

#include <filesystem>

namespace scplan::planner
{

using ingest::Json;

Json to_json(const ScpConfig & config);
ScpConfig scp_config_from_json(const Json & j, const ScpConfig & defaults = {});

Json to_json(const Objective & objective);
Objective objective_from_json(const Json & j);

Json to_json(const core::ViolationRecord & v);
core::ViolationRecord violation_from_json(const Json & j);

/// {scenario_id, method, status, planned_steps, dt, objective, objective_value,
///  compute_time_s, trajectory, attempted_trajectory, scp_history,
///  violations_postcheck, probes, note}.
/// compute_time_s is null unless `with_timing`, which keeps files from
/// repeated runs byte-identical. Absent trajectories are null.
Json to_json(const PlanResult & result, double dt, bool with_timing = false);
PlanResult plan_result_from_json(const Json & j);

void save_plan(const PlanResult & result, double dt, const std::filesystem::path & path, bool with_timing = false);
PlanResult load_plan(const std::filesystem::path & path);

}  // namespace scplan::planner

#endif  // SCPLAN__PLANNER__PLAN_IO_HPP_
