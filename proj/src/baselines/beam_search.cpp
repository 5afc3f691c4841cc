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

#include "scplan/baselines/beam_search.hpp"

#include "scplan/core/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>
#include <functional>

namespace scplan::baselines
{

namespace
{

double step_length(const core::Scenario & scenario, const BeamConfig & config)
{
  // The lead is sampled at the scenario's interval, so the search must match it.
  if (config.dt && std::abs(*config.dt - scenario.limits.dt) > 1e-12) {
    throw core::InvalidInput("beam dt differs from the scenario's sampling interval");
  }
  return scenario.limits.dt;
}

bool within(const core::State & s, const core::Scenario & scenario, double radius)
{
  return (s.position() - scenario.goal).norm() <= radius;
}

BeamEntry root(const core::Scenario & scenario, const BeamConfig & config)
{
  BeamEntry e;
  e.states.push_back(scenario.ego_init);
  e.at_goal = within(scenario.ego_init, scenario, config.goal_radius);
  return e;
}

BeamEntry child(
  const BeamEntry & parent, std::size_t k, const core::Scenario & scenario, const BeamConfig & config,
  const icl::PhiModel * phi, const RewardParams & params)
{
  const double dt = step_length(scenario, config);
  BeamEntry c = parent;
  const core::Vec2 u = action(k);
  auto & last = c.states.back();
  last.ax = u.x();
  last.ay = u.y();
  const core::State next = core::step_kinematics(last, u, dt);
  c.score += reward(last, next, parent.actions.size(), config.depth, scenario, phi, params);
  c.states.push_back(next);
  c.actions.push_back(static_cast<std::uint8_t>(k));
  c.at_goal = within(next, scenario, config.goal_radius);
  return c;
}

}  // namespace

void BeamConfig::validate() const
{
  if (width < 1) throw core::InvalidInput("beam width must be at least 1");
  if (depth < 1) throw core::InvalidInput("beam depth must be at least 1");
  if (dt && !(*dt > 0.0)) throw core::InvalidInput("beam dt must be positive");
  if (!(goal_radius >= 0.0)) throw core::InvalidInput("goal radius must be >= 0");
}

std::int64_t ranking_key(double score) { return std::llround(score / kScoreQuantum); }

bool ranks_before(const BeamEntry & a, const BeamEntry & b)
{
  const auto ka = ranking_key(a.score);
  const auto kb = ranking_key(b.score);
  if (ka != kb) return ka > kb;
  return std::lexicographical_compare(a.actions.begin(), a.actions.end(), b.actions.begin(), b.actions.end());
}

BeamEntry beam_search(
  const core::Scenario & scenario, const BeamConfig & config, const icl::PhiModel * phi,
  const RewardParams & params)
{
  config.validate();
  std::vector<BeamEntry> beam{root(scenario, config)};
  for (std::size_t step = 0; step < config.depth; ++step) {
    if (std::all_of(beam.begin(), beam.end(), [](const BeamEntry & e) { return e.at_goal; })) break;
    std::vector<BeamEntry> next;
    next.reserve(beam.size() * kNumActions);
    for (const auto & e : beam) {
      if (e.at_goal) {
        next.push_back(e);
        continue;
      }
      for (std::size_t k = 0; k < kNumActions; ++k) next.push_back(child(e, k, scenario, config, phi, params));
    }
    const std::size_t keep = std::min(config.width, next.size());
    std::partial_sort(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(keep), next.end(), ranks_before);
    next.resize(keep);
    beam = std::move(next);
  }
  return *std::min_element(beam.begin(), beam.end(), ranks_before);
}

BeamEntry exhaustive_search(
  const core::Scenario & scenario, const BeamConfig & config, const icl::PhiModel * phi,
  const RewardParams & params)
{
  config.validate();
  std::optional<BeamEntry> best;
  std::function<void(const BeamEntry &)> visit = [&](const BeamEntry & e) {
    if (e.at_goal || e.actions.size() == config.depth) {
      if (!best || ranks_before(e, *best)) best = e;
      return;
    }
    for (std::size_t k = 0; k < kNumActions; ++k) visit(child(e, k, scenario, config, phi, params));
  };
  visit(root(scenario, config));
  return *best;
}

planner::PlanResult to_plan_result(
  const BeamEntry & best, const core::Scenario & scenario, double dt, double goal_radius,
  const icl::PhiModel * phi, std::string method)
{
  planner::PlanResult r;
  r.scenario_id = scenario.id;
  r.method = std::move(method);
  r.planned_steps = best.actions.size();
  r.objective_value = best.score;
  core::Trajectory traj(best.states, dt);
  core::Scenario region = scenario;
  region.goal_tol = goal_radius;
  r.violations_postcheck = planner::postcheck(traj, region, phi, 1e-6);
  if (best.at_goal && r.violations_postcheck.empty()) {
    r.status = planner::PlanStatus::Feasible;
    r.trajectory = std::move(traj);
  } else {
    r.note = best.at_goal ? "goal reached but the post-check failed" : "goal_not_reached";
    r.attempt = std::move(traj);
  }
  return r;
}

planner::PlanResult beam_search_plan(
  const core::Scenario & scenario, const BeamConfig & config, const icl::PhiModel * phi,
  const RewardParams & params, bool exhaustive)
{
  scenario.validate();
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto best = exhaustive ? exhaustive_search(scenario, config, phi, params)
                               : beam_search(scenario, config, phi, params);
  auto r = to_plan_result(
    best, scenario, step_length(scenario, config), config.goal_radius, phi, exhaustive ? "exhaustive" : "beam");
  r.compute_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace scplan::baselines
