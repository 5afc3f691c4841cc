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

#include "harness.hpp"

#include "scplan/ingest/synth.hpp"

#include <cmath>
#include <cstdio>

namespace scplan::acceptance
{

std::string fmt(double v, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string sci(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

std::array<std::vector<std::size_t>, 6> hard_violations(
  const core::Trajectory & traj, const core::Scenario & scenario, double tol)
{
  std::array<std::vector<std::size_t>, 6> out;
  const auto & lim = scenario.limits;
  const double dt = traj.dt();
  const auto & s = traj.states();
  const auto & lead = scenario.lead.states();
  const std::size_t n = s.size();
  for (std::size_t t = 0; t < n; ++t) {
    if (t + 1 < n) {
      const double px = s[t + 1].x - s[t].x - s[t].vx * dt;
      const double py = s[t + 1].y - s[t].y - s[t].vy * dt;
      if (std::hypot(px, py) > tol) out[0].push_back(t);
      const double vx = s[t + 1].vx - s[t].vx - s[t].ax * dt;
      const double vy = s[t + 1].vy - s[t].vy - s[t].ay * dt;
      if (std::hypot(vx, vy) > tol) out[1].push_back(t);
    }
    if (s[t].vx * s[t].vx + s[t].vy * s[t].vy - lim.v_max * lim.v_max > tol) out[2].push_back(t);
    if (s[t].ax * s[t].ax + s[t].ay * s[t].ay - lim.a_max * lim.a_max > tol) out[3].push_back(t);
    const auto & l = lead[std::min(t, lead.size() - 1)];
    const double gx = s[t].x - l.x;
    const double gy = s[t].y - l.y;
    if (lim.d_min * lim.d_min - (gx * gx + gy * gy) > tol) out[5].push_back(t);
  }
  if (std::hypot(s[0].x - scenario.ego_init.x, s[0].y - scenario.ego_init.y) > tol) out[4].push_back(0);
  const double miss = std::hypot(s[n - 1].x - scenario.goal.x(), s[n - 1].y - scenario.goal.y());
  if (miss - scenario.goal_tol > tol) out[4].push_back(n - 1);
  return out;
}

std::vector<std::size_t> soft_violations(
  const core::Trajectory & traj, const core::Scenario & scenario, const icl::PhiModel & phi, double epsilon,
  double tol)
{
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t + 1 < traj.size(); ++t) {
    const auto ctx = ingest::scenario_context(scenario, traj[t], traj[t + 1], t, traj.horizon());
    if (icl::phi_eval(phi, traj[t], traj[t + 1], ctx) > epsilon + tol) out.push_back(t);
  }
  return out;
}

double effort_of(const core::Trajectory & traj)
{
  double sum = 0.0;
  for (std::size_t t = 0; t + 1 < traj.size(); ++t) sum += traj[t].ax * traj[t].ax + traj[t].ay * traj[t].ay;
  return sum;
}

double jerk_of(const core::Trajectory & traj)
{
  double sum = 0.0;
  for (std::size_t t = 0; t + 1 < traj.size(); ++t) {
    const double jx = traj[t + 1].ax - traj[t].ax;
    const double jy = traj[t + 1].ay - traj[t].ay;
    sum += jx * jx + jy * jy;
  }
  return sum;
}

double length_of(const core::Trajectory & traj)
{
  double sum = 0.0;
  for (std::size_t t = 0; t + 1 < traj.size(); ++t) {
    sum += std::hypot(traj[t + 1].x - traj[t].x, traj[t + 1].y - traj[t].y);
  }
  return sum;
}

std::vector<core::Scenario> synthetic(core::ScenarioKind kind, std::size_t n, std::uint64_t seed)
{
  core::Limits lim;
  lim.dt = 0.4;
  return ingest::synth_scenarios(kind, n, seed, lim, 50);
}

std::vector<core::Scenario> mixed_suite(std::size_t total, std::uint64_t seed)
{
  const std::size_t highway = total / 6;
  const std::size_t rest = total - 2 * highway;
  std::vector<core::Scenario> out;
  for (auto & s : synthetic(core::ScenarioKind::Intersection, rest / 2, seed)) out.push_back(std::move(s));
  for (auto & s : synthetic(core::ScenarioKind::Roundabout, rest - rest / 2, seed + 1)) out.push_back(std::move(s));
  for (auto & s : synthetic(core::ScenarioKind::HighwayRightward, highway, seed + 2)) out.push_back(std::move(s));
  for (auto & s : synthetic(core::ScenarioKind::HighwayLeftward, highway, seed + 3)) out.push_back(std::move(s));
  return out;
}

planner::PlanResult plan_min_time_any(
  const core::Scenario & scenario, const planner::ScpConfig & config, const icl::PhiModel * phi)
{
  if (core::is_highway(scenario.kind)) {
    return planner::plan_highd(scenario, planner::Objective{}, std::nullopt, config, phi);
  }
  return planner::plan_min_time(scenario, config, phi);
}

}  // namespace scplan::acceptance
