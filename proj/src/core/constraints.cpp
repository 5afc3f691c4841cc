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

#include "scplan/core/constraints.hpp"

#include <algorithm>

namespace scplan::core
{

const std::vector<Residual> & HardResiduals::of(ConstraintId id) const
{
  switch (id) {
    case ConstraintId::C1:
      return position_dynamics;
    case ConstraintId::C2:
      return velocity_dynamics;
    case ConstraintId::C3:
      return speed;
    case ConstraintId::C4:
      return acceleration;
    case ConstraintId::C5:
      return boundary;
    case ConstraintId::C6:
      return front_distance;
    case ConstraintId::C7:
      break;
  }
  throw InvalidInput("hard residuals: C7 is not a hard constraint");
}

HardResiduals hard_residuals(const Trajectory & traj, const Scenario & scenario)
{
  const auto & lim = scenario.limits;
  if (traj.dt() != lim.dt) throw InvalidInput("check_hard_constraints: dt mismatch");

  HardResiduals r;
  const double dt = lim.dt;
  const std::size_t n = traj.size();
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const auto & s = traj[t];
    const auto & s1 = traj[t + 1];
    r.position_dynamics.push_back(
      {t, (s1.position() - s.position() - s.velocity() * dt).norm()});
    r.velocity_dynamics.push_back(
      {t, (s1.velocity() - s.velocity() - s.acceleration() * dt).norm()});
  }
  for (std::size_t t = 0; t < n; ++t) {
    const auto & s = traj[t];
    r.speed.push_back({t, s.velocity().squaredNorm() - lim.v_max * lim.v_max});
    r.acceleration.push_back({t, s.acceleration().squaredNorm() - lim.a_max * lim.a_max});
    const Vec2 gap = s.position() - scenario.lead.held(t).position();
    r.front_distance.push_back({t, lim.d_min * lim.d_min - gap.squaredNorm()});
  }
  r.boundary.push_back({0, (traj.front().position() - scenario.ego_init.position()).norm()});
  r.boundary.push_back(
    {n - 1, (traj.back().position() - scenario.goal).norm() - scenario.goal_tol});
  return r;
}

std::vector<ViolationRecord> check_hard_constraints(
  const Trajectory & traj, const Scenario & scenario, double tol)
{
  const auto residuals = hard_residuals(traj, scenario);
  std::vector<ViolationRecord> out;
  for (auto id : kAllConstraints) {
    if (id == ConstraintId::C7) continue;
    for (const auto & res : residuals.of(id)) {
      if (res.value > tol) out.push_back({id, res.step, res.value});
    }
  }
  return out;
}

std::vector<double> front_distance_profile(const Trajectory & traj, const Trajectory & lead)
{
  const std::size_t n = std::min(traj.size(), lead.size());
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    out[t] = (traj[t].position() - lead[t].position()).norm();
  }
  return out;
}

std::string_view to_string(ScenarioClass c)
{
  switch (c) {
    case ScenarioClass::Candidate:
      return "candidate";
    case ScenarioClass::BadStart:
      return "bad_start";
    case ScenarioClass::BadEnd:
      return "bad_end";
  }
  return "unknown";
}

ScenarioClass classify_scenario(const Scenario & scenario)
{
  const double d_min = scenario.limits.d_min;
  if ((scenario.ego_init.position() - scenario.lead.front().position()).norm() < d_min) {
    return ScenarioClass::BadStart;
  }
  if ((scenario.goal - scenario.lead.back().position()).norm() < d_min) {
    return ScenarioClass::BadEnd;
  }
  return ScenarioClass::Candidate;
}

}  // namespace scplan::core
