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

#include "scplan/baselines/reward.hpp"

#include <cmath>

namespace scplan::baselines
{

core::Vec2 action(std::size_t k)
{
  // Unit directions; coasting first so the default action never accelerates.
  static constexpr std::array<std::array<int, 2>, kNumActions> kDirections{{
    {0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
  }};
  if (k >= kNumActions) throw core::InvalidInput("action index out of range");
  return {kActionMagnitude * kDirections[k][0], kActionMagnitude * kDirections[k][1]};
}

RewardParams RewardParams::beam() { return RewardParams{}; }

RewardParams RewardParams::mdp()
{
  RewardParams p;
  p.progress = ProgressKind::Absolute;
  return p;
}

void RewardParams::validate() const
{
  if (!(hard_penalty <= 0.0) || !(soft_penalty <= 0.0) || !(time_penalty <= 0.0)) {
    throw core::InvalidInput("reward penalties must be <= 0");
  }
  if (!(soft_bonus >= 0.0)) throw core::InvalidInput("soft bonus must be >= 0");
  if (!(soft_penalty_threshold <= soft_bonus_threshold)) {
    throw core::InvalidInput("soft penalty band must lie below the bonus band");
  }
}

RewardTerms reward_terms(
  const core::State & s, const core::State & next, std::size_t t, std::size_t horizon,
  const core::Scenario & scenario, const icl::PhiModel * phi, const RewardParams & params)
{
  RewardTerms r;
  const double d_next = (next.position() - scenario.goal).norm();
  if (params.progress == ProgressKind::Delta) {
    r.progress = ((s.position() - scenario.goal).norm() - d_next) * params.delta_gain;
  } else {
    r.progress = (params.absolute_base - d_next) * params.absolute_gain;
  }

  const auto & lim = scenario.limits;
  const bool too_fast = next.velocity().norm() > lim.v_max;
  const bool too_hard = next.acceleration().norm() > lim.a_max;
  const bool too_close = (next.position() - scenario.lead.held(t + 1).position()).norm() < lim.d_min;
  r.hard_violations = static_cast<std::size_t>(too_fast) + static_cast<std::size_t>(too_hard) +
                      static_cast<std::size_t>(too_close);
  r.hard = params.hard_penalty * static_cast<double>(r.hard_violations);

  if (phi != nullptr) {
    const auto ctx = ingest::scenario_context(scenario, s, next, t, horizon, params.ttc_cap);
    const double score = std::exp(-icl::phi_eval(*phi, s, next, ctx));
    if (score >= params.soft_bonus_threshold) {
      r.soft = params.soft_bonus;
    } else if (score < params.soft_penalty_threshold) {
      r.soft = params.soft_penalty;
    }
  }
  r.time = params.time_penalty;
  return r;
}

double reward(
  const core::State & s, const core::State & next, std::size_t t, std::size_t horizon,
  const core::Scenario & scenario, const icl::PhiModel * phi, const RewardParams & params)
{
  return reward_terms(s, next, t, horizon, scenario, phi, params).total();
}

}  // namespace scplan::baselines
