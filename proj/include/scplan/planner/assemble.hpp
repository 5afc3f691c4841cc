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

#ifndef SCPLAN__PLANNER__ASSEMBLE_HPP_
#define SCPLAN__PLANNER__ASSEMBLE_HPP_

#include "scplan/core/constraints.hpp"
#include "scplan/core/types.hpp"
#include "scplan/icl/phi_model.hpp"
#include "scplan/planner/convex_solver.hpp"

#include <optional>
#include <stdexcept>
#include <string_view>

namespace scplan::planner
{

enum class ObjectiveKind { MinTime, MinDistance, MinEffort, MinJerk, MaxSoft, TimeSoftWeighted };

struct Objective
{
  ObjectiveKind kind{ObjectiveKind::MinTime};
  /// Weight on the soft cost; TimeSoftWeighted only.
  double weight{0.0};

  static Objective time_soft(double weight);
  void validate() const;
  bool operator==(const Objective &) const = default;
};

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(std::string_view name);

/// Raised when a scenario fails the start/end pre-check.
class ScenarioRejected : public std::invalid_argument
{
public:
  ScenarioRejected(const std::string & what, core::ScenarioClass cls)
  : std::invalid_argument(what), cls_(cls)
  {
  }
  core::ScenarioClass scenario_class() const { return cls_; }

private:
  core::ScenarioClass cls_;
};

/// Decision vector layout: step t occupies [6t, 6t + 6) as x, y, vx, vy, ax,
/// ay; path-length bounds (one per transition) follow when present.
struct VariableLayout
{
  std::size_t horizon{0};
  bool path_length{false};

  Index position(std::size_t t) const { return static_cast<Index>(6 * t); }
  Index velocity(std::size_t t) const { return static_cast<Index>(6 * t + 2); }
  Index acceleration(std::size_t t) const { return static_cast<Index>(6 * t + 4); }
  Index path_bound(std::size_t t) const { return static_cast<Index>(6 * (horizon + 1) + t); }
  Index size() const
  {
    return static_cast<Index>(6 * (horizon + 1) + (path_length ? horizon : 0));
  }
};

enum class AvoidanceMode {
  /// n_t'(x_t - front_t) >= d_min with n_t from the reference; no rows without one.
  Linearized,
  /// Longitudinal half-plane behind (or ahead of) the lead.
  HalfPlane,
  None,
};

struct AssemblyOptions
{
  AvoidanceMode avoidance{AvoidanceMode::Linearized};
  /// Reference-to-lead distances at or below this skip the avoidance row.
  double norm_floor{1e-6};
  bool pin_initial_accel{true};
  /// Include the learned cost as a constraint (and objective, where asked).
  bool soft_constraint{true};
  double ttc_cap{ingest::kDefaultTtcCap};
};

/// Builds the convex subproblem for horizon T. Throws ScenarioRejected for
/// BadStart/BadEnd scenarios, icl::UnsupportedVariant for a network cost
/// without a reference, and InvalidInput for a mismatched reference or dt.
ConvexSubproblem assemble_problem(
  const core::Scenario & scenario, const Objective & objective, std::size_t horizon,
  const core::Trajectory * reference, const icl::PhiModel * phi, const AssemblyOptions & options = {});

/// Reads a trajectory back out of a solution vector.
core::Trajectory extract_trajectory(const VectorXd & x, std::size_t horizon, double dt);

/// Straight-line initial guess from the start to the goal.
VectorXd straight_line_guess(const core::Scenario & scenario, std::size_t horizon, const VariableLayout & layout);

// Objective functionals evaluated on a finished trajectory.
double path_length(const core::Trajectory & traj);
/// sum_{t<T} |a_t|^2
double control_effort(const core::Trajectory & traj);
/// sum_{t<T} |a_{t+1} - a_t|^2
double jerk_cost(const core::Trajectory & traj);
/// sum_{t<T} phi(s_t, s_{t+1}) with the scenario context of each step.
double soft_cost(
  const core::Trajectory & traj, const core::Scenario & scenario, const icl::PhiModel & phi,
  double ttc_cap = ingest::kDefaultTtcCap);
/// Largest phi over the transitions, with the step it occurs at.
std::pair<double, std::size_t> worst_soft_cost(
  const core::Trajectory & traj, const core::Scenario & scenario, const icl::PhiModel & phi,
  double ttc_cap = ingest::kDefaultTtcCap);

/// The functional `objective` minimizes at a fixed horizon. Soft-cost
/// objectives need `phi`; MinTime is identically zero.
double objective_functional(
  const Objective & objective, const core::Trajectory & traj, const core::Scenario & scenario,
  const icl::PhiModel * phi);

}  // namespace scplan::planner

#endif  // SCPLAN__PLANNER__ASSEMBLE_HPP_
