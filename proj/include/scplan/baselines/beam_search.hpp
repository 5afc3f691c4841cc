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

#ifndef SCPLAN__BASELINES__BEAM_SEARCH_HPP_
#define SCPLAN__BASELINES__BEAM_SEARCH_HPP_

#include "scplan/baselines/reward.hpp"
#include "scplan/planner/scp.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace scplan::baselines
{

/// Radius of the goal region baselines must reach.
constexpr double kSuccessRadius = 10.0;

struct BeamConfig
{
  std::size_t width{5};
  std::size_t depth{20};
  /// Step length; the scenario's sampling interval when absent.
  std::optional<double> dt;
  double goal_radius{kSuccessRadius};

  void validate() const;
};

/// Scores are ranked after rounding to this quantum. Delta progress telescopes,
/// so distinct paths with the same endpoint tie exactly in real arithmetic and
/// differ only by rounding noise; the action order then decides.
constexpr double kScoreQuantum = 1e-9;

/// Partial plan ordered by descending score, then ascending action sequence.
struct BeamEntry
{
  std::vector<core::State> states;
  std::vector<std::uint8_t> actions;
  double score{0.0};
  bool at_goal{false};
};

std::int64_t ranking_key(double score);

/// True when `a` ranks ahead of `b`.
bool ranks_before(const BeamEntry & a, const BeamEntry & b);

/// Keeps the best `width` entries per step, expanding all nine actions of each
/// entry that has not reached the goal. Returns the best final entry.
BeamEntry beam_search(
  const core::Scenario & scenario, const BeamConfig & config, const icl::PhiModel * phi,
  const RewardParams & params);

/// Every action sequence up to `config.depth`, stopping at the goal.
BeamEntry exhaustive_search(
  const core::Scenario & scenario, const BeamConfig & config, const icl::PhiModel * phi,
  const RewardParams & params);

/// Runs beam_search (or the exhaustive search) and reports the best entry in
/// the planner's result format. Feasible iff the goal region is reached and
/// the shared post-check passes.
planner::PlanResult beam_search_plan(
  const core::Scenario & scenario, const BeamConfig & config, const icl::PhiModel * phi,
  const RewardParams & params, bool exhaustive = false);

/// The entry as a result: trajectory, cumulative reward as objective value,
/// post-check against the goal region of radius `goal_radius`.
planner::PlanResult to_plan_result(
  const BeamEntry & best, const core::Scenario & scenario, double dt, double goal_radius,
  const icl::PhiModel * phi, std::string method);

}  // namespace scplan::baselines

#endif  // SCPLAN__BASELINES__BEAM_SEARCH_HPP_
