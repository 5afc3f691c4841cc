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

#ifndef SCPLAN__BASELINES__REWARD_HPP_
#define SCPLAN__BASELINES__REWARD_HPP_

#include "scplan/core/types.hpp"
#include "scplan/icl/phi_model.hpp"
#include "scplan/ingest/features.hpp"

#include <array>

namespace scplan::baselines
{

constexpr std::size_t kNumActions = 9;
constexpr double kActionMagnitude = 2.0;

/// The nine accelerations {-2, 0, 2}^2 m/s^2 in index order: coasting (0, 0),
/// then +x, -x, +y, -y, then the diagonals (+,+), (+,-), (-,+), (-,-).
core::Vec2 action(std::size_t k);

enum class ProgressKind {
  /// (d - d') * gain: pays for closing distance this step.
  Delta,
  /// (base - d') * gain: pays for being near the goal.
  Absolute,
};

struct RewardParams
{
  double hard_penalty{-1000.0};
  double soft_bonus{10.0};
  double soft_bonus_threshold{0.5};
  double soft_penalty{-50.0};
  double soft_penalty_threshold{0.3};
  double time_penalty{-1.0};
  ProgressKind progress{ProgressKind::Delta};
  double delta_gain{20.0};
  double absolute_base{100.0};
  double absolute_gain{0.1};
  double ttc_cap{ingest::kDefaultTtcCap};

  /// Beam-search row: delta progress.
  static RewardParams beam();
  /// Tabular row: absolute progress.
  static RewardParams mdp();
  void validate() const;
};

struct RewardTerms
{
  double progress{0.0};
  double hard{0.0};
  double soft{0.0};
  double time{0.0};
  std::size_t hard_violations{0};

  double total() const { return progress + hard + soft + time; }
};

/// Reward of the transition s -> next taken at step t of a `horizon`-step
/// episode. Hard terms check next's speed, the applied acceleration (next's
/// acceleration field) and the distance to the lead at t + 1. Soft terms need
/// `phi` and use the feasibility score exp(-phi).
RewardTerms reward_terms(
  const core::State & s, const core::State & next, std::size_t t, std::size_t horizon,
  const core::Scenario & scenario, const icl::PhiModel * phi, const RewardParams & params);

double reward(
  const core::State & s, const core::State & next, std::size_t t, std::size_t horizon,
  const core::Scenario & scenario, const icl::PhiModel * phi, const RewardParams & params);

}  // namespace scplan::baselines

#endif  // SCPLAN__BASELINES__REWARD_HPP_
