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

#ifndef SCPLAN__CORE__CONSTRAINTS_HPP_
#define SCPLAN__CORE__CONSTRAINTS_HPP_

#include "scplan/core/types.hpp"

#include <vector>

namespace scplan::core
{

/// Residual g of one constraint at one evaluation point; g <= 0 is satisfied.
struct Residual
{
  std::size_t step;
  double value;
};

/// Residuals of the hard constraints at every evaluation point.
/// Dynamics rows exist per transition, bound and distance rows per state,
/// and the boundary row at the first and last state.
struct HardResiduals
{
  std::vector<Residual> position_dynamics;
  std::vector<Residual> velocity_dynamics;
  std::vector<Residual> speed;
  std::vector<Residual> acceleration;
  std::vector<Residual> boundary;
  std::vector<Residual> front_distance;

  const std::vector<Residual> & of(ConstraintId id) const;
};

/// Requires traj.dt() == scenario.limits.dt.
HardResiduals hard_residuals(const Trajectory & traj, const Scenario & scenario);

/// Every residual above `tol`, ordered by constraint then step.
std::vector<ViolationRecord> check_hard_constraints(
  const Trajectory & traj, const Scenario & scenario, double tol);

/// Distance to the lead over the shared index range.
std::vector<double> front_distance_profile(const Trajectory & traj, const Trajectory & lead);

enum class ScenarioClass { Candidate, BadStart, BadEnd };

std::string_view to_string(ScenarioClass c);

ScenarioClass classify_scenario(const Scenario & scenario);

}  // namespace scplan::core

#endif  // SCPLAN__CORE__CONSTRAINTS_HPP_
