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

#include "scplan/baselines/q_learning.hpp"

#include "scplan/core/kinematics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <string>

namespace scplan::baselines
{

namespace
{

std::int64_t bin(double value, double cell, double extent, std::int64_t count, bool & clamped)
{
  const double raw = std::floor((value + extent) / cell);
  if (raw < 0.0) {
    clamped = true;
    return 0;
  }
  if (raw >= static_cast<double>(count)) {
    clamped = true;
    return count - 1;
  }
  return static_cast<std::int64_t>(raw);
}

/// Uniform [0, 1) from the top 53 bits, identical on every platform.
double unit(std::mt19937_64 & rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void GridSpec::validate() const
{
  for (double c : {goal_dx_cell, goal_dy_cell, vx_cell, vy_cell}) {
    if (!(c > 0.0) || !std::isfinite(c)) throw core::InvalidInput("grid cells must be positive");
  }
  if (!(position_extent > 0.0) || !(velocity_extent > 0.0)) throw core::InvalidInput("grid extents must be positive");
}

CellIndex discretize(const GridSpec & grid, const core::State & s, const core::Vec2 & goal)
{
  const auto count = [](double extent, double cell) {
    return static_cast<std::int64_t>(std::ceil(2.0 * extent / cell));
  };
  const std::int64_t nx = count(grid.position_extent, grid.goal_dx_cell);
  const std::int64_t ny = count(grid.position_extent, grid.goal_dy_cell);
  const std::int64_t nvx = count(grid.velocity_extent, grid.vx_cell);
  const std::int64_t nvy = count(grid.velocity_extent, grid.vy_cell);
  CellIndex c;
  const std::int64_t ix = bin(goal.x() - s.x, grid.goal_dx_cell, grid.position_extent, nx, c.clamped);
  const std::int64_t iy = bin(goal.y() - s.y, grid.goal_dy_cell, grid.position_extent, ny, c.clamped);
  const std::int64_t ivx = bin(s.vx, grid.vx_cell, grid.velocity_extent, nvx, c.clamped);
  const std::int64_t ivy = bin(s.vy, grid.vy_cell, grid.velocity_extent, nvy, c.clamped);
  c.index = ((ix * ny + iy) * nvx + ivx) * nvy + ivy;
  return c;
}

ActionValues QTable::values(std::int64_t cell) const
{
  const auto it = cells.find(cell);
  return it == cells.end() ? ActionValues{} : it->second;
}

std::size_t QTable::greedy(std::int64_t cell) const
{
  const auto q = values(cell);
  std::size_t best = 0;
  for (std::size_t k = 1; k < kNumActions; ++k) {
    if (q[k] > q[best]) best = k;
  }
  return best;
}

void QLearningParams::validate() const
{
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) throw core::InvalidInput("learning rate must be in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw core::InvalidInput("gamma must be in [0, 1]");
  if (!(exploration >= 0.0 && exploration <= 1.0)) throw core::InvalidInput("exploration must be in [0, 1]");
  if (episodes < 1) throw core::InvalidInput("episodes must be at least 1");
  if (!(goal_radius >= 0.0)) throw core::InvalidInput("goal radius must be >= 0");
  grid.validate();
  reward.validate();
}

QTable mdp_icl_train(
  const std::vector<core::Scenario> & scenarios, const icl::PhiModel * phi, const QLearningParams & params,
  std::uint64_t seed)
{
  params.validate();
  if (scenarios.empty()) throw core::InvalidInput("no training scenarios");
  QTable table;
  table.grid = params.grid;
  std::mt19937_64 rng(seed);
  for (std::size_t episode = 0; episode < params.episodes; ++episode) {
    const auto & scenario = scenarios[episode % scenarios.size()];
    const double dt = scenario.limits.dt;
    core::State s = scenario.ego_init;
    double ret = 0.0;
    for (std::size_t step = 0; step < params.max_steps; ++step) {
      if ((s.position() - scenario.goal).norm() <= params.goal_radius) break;
      const auto cell = discretize(table.grid, s, scenario.goal);
      table.clamped_events += cell.clamped ? 1 : 0;
      std::size_t a = 0;
      if (unit(rng) < params.exploration) {
        a = static_cast<std::size_t>(rng() % kNumActions);
      } else {
        a = table.greedy(cell.index);
      }
      const core::Vec2 u = action(a);
      s.ax = u.x();
      s.ay = u.y();
      const core::State next = core::step_kinematics(s, u, dt);
      const double r = reward(s, next, step, params.max_steps, scenario, phi, params.reward);
      const bool done = (next.position() - scenario.goal).norm() <= params.goal_radius;
      double target = r;
      if (!done) {
        const auto q_next = table.values(discretize(table.grid, next, scenario.goal).index);
        target += params.gamma * *std::max_element(q_next.begin(), q_next.end());
      }
      auto & q = table.cells[cell.index];
      q[a] += params.learning_rate * (target - q[a]);
      ret += r;
      s = next;
    }
    table.train_log.push_back(ret);
  }
  return table;
}

planner::PlanResult rollout_policy(
  const QTable & table, const core::Scenario & scenario, std::size_t max_steps, const icl::PhiModel * phi,
  const QLearningParams & params)
{
  scenario.validate();
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  BeamEntry path;
  path.states.push_back(scenario.ego_init);
  std::size_t clamped = 0;
  const auto at_goal = [&](const core::State & s) {
    return (s.position() - scenario.goal).norm() <= params.goal_radius;
  };
  path.at_goal = at_goal(scenario.ego_init);
  for (std::size_t step = 0; step < max_steps && !path.at_goal; ++step) {
    auto & s = path.states.back();
    const auto cell = discretize(table.grid, s, scenario.goal);
    clamped += cell.clamped ? 1 : 0;
    const std::size_t a = table.greedy(cell.index);
    const core::Vec2 u = action(a);
    s.ax = u.x();
    s.ay = u.y();
    const core::State next = core::step_kinematics(s, u, scenario.limits.dt);
    path.score += reward(s, next, step, max_steps, scenario, phi, params.reward);
    path.actions.push_back(static_cast<std::uint8_t>(a));
    path.states.push_back(next);
    path.at_goal = at_goal(next);
  }
  auto r = to_plan_result(path, scenario, scenario.limits.dt, params.goal_radius, phi, "mdp");
  if (clamped > 0) {
    r.note += (r.note.empty() ? "" : "; ") + std::to_string(clamped) + " states clamped to the grid boundary";
  }
  r.compute_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Json to_json(const GridSpec & g)
{
  return Json{
    {"goal_dx_cell", g.goal_dx_cell},
    {"goal_dy_cell", g.goal_dy_cell},
    {"vx_cell", g.vx_cell},
    {"vy_cell", g.vy_cell},
    {"position_extent", g.position_extent},
    {"velocity_extent", g.velocity_extent},
  };
}

GridSpec grid_spec_from_json(const Json & j)
{
  GridSpec g;
  g.goal_dx_cell = j.value("goal_dx_cell", g.goal_dx_cell);
  g.goal_dy_cell = j.value("goal_dy_cell", g.goal_dy_cell);
  g.vx_cell = j.value("vx_cell", g.vx_cell);
  g.vy_cell = j.value("vy_cell", g.vy_cell);
  g.position_extent = j.value("position_extent", g.position_extent);
  g.velocity_extent = j.value("velocity_extent", g.velocity_extent);
  g.validate();
  return g;
}

Json to_json(const QTable & t)
{
  Json cells = Json::object();
  for (const auto & [index, q] : t.cells) cells[std::to_string(index)] = q;
  return Json{
    {"grid_spec", to_json(t.grid)},
    {"cells", std::move(cells)},
    {"train_log", t.train_log},
    {"clamped_events", t.clamped_events},
  };
}

QTable qtable_from_json(const Json & j)
{
  QTable t;
  t.grid = grid_spec_from_json(j.at("grid_spec"));
  for (const auto & [key, q] : j.at("cells").items()) {
    const auto values = q.get<ActionValues>();
    for (double v : values) {
      if (!std::isfinite(v)) throw core::InvalidInput("non-finite Q value in cell " + key);
    }
    t.cells[std::stoll(key)] = values;
  }
  t.train_log = j.value("train_log", std::vector<double>{});
  t.clamped_events = j.value("clamped_events", std::size_t{0});
  return t;
}

void save_qtable(const QTable & table, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(table).dump(2) << '\n';
}

QTable load_qtable(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return qtable_from_json(Json::parse(in));
  } catch (const Json::exception & e) {
    throw core::InvalidInput("q-table file " + path.string() + ": " + e.what());
  }
}

}  // namespace scplan::baselines
