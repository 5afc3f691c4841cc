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

#ifndef SCPLAN__PLANNER__SCP_HPP_
#define SCPLAN__PLANNER__SCP_HPP_

#include "scplan/planner/assemble.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scplan::planner
{

struct ScpConfig
{
  std::size_t scp_iterations{3};
  double norm_floor{1e-6};
  std::size_t t_min{1};
  std::size_t t_max{100};
  double solver_tol{1e-8};
  std::size_t max_solver_iters{600};
  bool pin_initial_accel{true};
  /// Tolerance of the hard- and soft-constraint check every plan passes
  /// before it is reported Feasible.
  double postcheck_tol{1e-6};
  double ttc_cap{ingest::kDefaultTtcCap};

  void validate() const;
};

enum class PlanStatus { Feasible, Infeasible, BadStart, BadEnd };
std::string_view to_string(PlanStatus status);
PlanStatus plan_status_from_string(std::string_view name);

/// A trajectory is present iff the status is Feasible.
struct PlanResult
{
  std::string scenario_id;
  PlanStatus status{PlanStatus::Infeasible};
  std::optional<core::Trajectory> trajectory;
  /// Executed path of a result that is not Feasible, for methods that always
  /// produce one (the baselines). Never set together with `trajectory`.
  std::optional<core::Trajectory> attempt;
  std::size_t planned_steps{0};
  Objective objective{};
  double objective_value{0.0};
  double compute_time{0.0};
  /// Solver objective of every completed round.
  std::vector<double> scp_history;
  /// Constraint violations that demoted a candidate to Infeasible.
  std::vector<core::ViolationRecord> violations_postcheck;
  /// Horizons probed by a search, with their feasibility.
  std::vector<std::pair<std::size_t, bool>> probes;
  std::string method;
  std::string note;

  bool feasible() const { return status == PlanStatus::Feasible; }
};

/// Hard constraints C1-C6 at `tol` plus, with a cost model, phi <= epsilon + tol
/// at every transition (reported as C7).
std::vector<core::ViolationRecord> postcheck(
  const core::Trajectory & traj, const core::Scenario & scenario, const icl::PhiModel * phi, double tol,
  double ttc_cap = ingest::kDefaultTtcCap);

/// One fixed-horizon attempt: the rounds of linearized avoidance (or a single
/// half-plane solve), then the post-check. The building block of every search.
PlanResult probe_horizon(
  const core::Scenario & scenario, const Objective & objective, std::size_t horizon, const ScpConfig & config,
  const icl::PhiModel * phi, AvoidanceMode mode = AvoidanceMode::Linearized);

/// Fixed-horizon planning for every objective but MinTime.
PlanResult plan_scp(
  const core::Scenario & scenario, const Objective & objective, std::size_t horizon, const ScpConfig & config,
  const icl::PhiModel * phi = nullptr);

/// Binary search over [t_min, t_max] for the shortest horizon whose
/// zero-objective rounds all succeed.
PlanResult plan_min_time(const core::Scenario & scenario, const ScpConfig & config, const icl::PhiModel * phi = nullptr);

/// Highway variant with a longitudinal half-plane in place of the linearized
/// avoidance. Without a horizon, or for MinTime, the horizon is searched.
PlanResult plan_highd(
  const core::Scenario & scenario, const Objective & objective, std::optional<std::size_t> horizon,
  const ScpConfig & config, const icl::PhiModel * phi = nullptr);

/// Probes the same horizons as plan_min_time while minimizing the summed soft
/// cost, then keeps the probed feasible horizon minimizing T dt + w sum(phi).
PlanResult plan_time_soft(
  const core::Scenario & scenario, const ScpConfig & config, const icl::PhiModel & phi, double weight);

/// Shared binary search: returns the best feasible probe, or the last probe
/// when none succeeded. `probe` is called once per horizon.
template <class Probe>
PlanResult binary_search_horizon(std::size_t t_min, std::size_t t_max, Probe && probe,
                                 std::vector<std::pair<std::size_t, PlanResult>> * visited = nullptr);

}  // namespace scplan::planner

#include "scplan/planner/detail/binary_search.hpp"

#endif  // SCPLAN__PLANNER__SCP_HPP_
