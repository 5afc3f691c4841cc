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

#ifndef SCPLAN__EVAL__METRICS_HPP_
#define SCPLAN__EVAL__METRICS_HPP_

#include "scplan/core/types.hpp"
#include "scplan/icl/phi_model.hpp"
#include "scplan/ingest/features.hpp"

#include <optional>
#include <vector>

namespace scplan::eval
{

/// A trajectory together with the scenario it was planned for.
struct Sample
{
  core::Trajectory trajectory;
  core::Scenario scenario;
};

struct CheckConfig
{
  /// Hard residuals above this count as violations (the planner's post-check tolerance).
  double tol{1e-6};
  /// Soft threshold; each scenario's limits.epsilon when absent.
  std::optional<double> epsilon;
  double ttc_cap{ingest::kDefaultTtcCap};
};

/// Percent of time steps that violate `constraint`. Every state index of a
/// trajectory is one time step; transition rows and the soft cost count at
/// their source index. C7 needs `phi`.
double violation_rate(
  const std::vector<Sample> & samples, core::ConstraintId constraint, const icl::PhiModel * phi,
  const CheckConfig & config = {});

/// Violating step indices per constraint for one sample (index 0 is C1).
std::array<std::vector<std::size_t>, 7> violating_steps(
  const Sample & sample, const icl::PhiModel * phi, const CheckConfig & config = {});

/// Mean cost over all transitions of all samples.
double constraint_quality(const std::vector<Sample> & samples, const icl::PhiModel & phi, double ttc_cap = ingest::kDefaultTtcCap);

/// Percent of samples without any violation; C7 enters only when `phi` is given.
double feasibility_rate(
  const std::vector<Sample> & samples, const icl::PhiModel * phi, const CheckConfig & config = {});

struct MeanStd
{
  double mean{0.0};
  double std{0.0};
};

struct TrajectoryQuality
{
  MeanStd dv;
  MeanStd da;
  MeanStd dp;
  std::size_t steps{0};
};

/// Per-state Euclidean differences of velocity, acceleration and position
/// over the shared length; population standard deviation.
TrajectoryQuality trajectory_quality(const core::Trajectory & pred, const core::Trajectory & reference);

struct SuccessBounds
{
  /// Largest accepted speed change per step; a_max * dt when absent.
  std::optional<double> speed_change;
  /// Largest accepted acceleration change per step; 2 a_max * dt when absent.
  std::optional<double> accel_change;
};

struct SuccessRates
{
  double sr1{0.0};
  double sr2{0.0};
  double mean() const { return 0.5 * (sr1 + sr2); }
};

/// SR1: percent of transitions with a bounded speed change; SR2: percent with a
/// bounded acceleration change. Bounds default from each scenario's limits.
SuccessRates success_rates(const std::vector<Sample> & samples, const SuccessBounds & bounds = {});

enum class RewardScheme { MinMax, Log, Robust };

std::string_view to_string(RewardScheme scheme);
RewardScheme reward_scheme_from_string(std::string_view name);

struct NormalizedRewards
{
  std::vector<double> scores;
  /// All method rewards were equal; MinMax and Log report 0.5 then.
  bool degenerate{false};
};

/// One score per method from its episode rewards. MinMax and Log rescale the
/// per-method mean reward across methods to [0, 1] (Log through
/// log(1 + r - min) / log(1 + max - min)); Robust is the raw worst episode.
NormalizedRewards reward_normalize(const std::vector<std::vector<double>> & episode_rewards, RewardScheme scheme);

}  // namespace scplan::eval

#endif  // SCPLAN__EVAL__METRICS_HPP_
