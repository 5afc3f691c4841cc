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

#include "planner/fixtures.hpp"
#include "scplan/baselines/q_learning.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <numeric>

namespace scplan::baselines
{
namespace
{

using planner::testing::at_rest;
using planner::testing::open_road;

/// Straight corridor: start at rest, goal 30 m ahead along x. `count` copies
/// with the same geometry shifted along the corridor.
std::vector<core::Scenario> corridor(std::size_t count)
{
  std::vector<core::Scenario> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double shift = 0.5 * static_cast<double>(i);
    auto sc = open_road(at_rest(shift, 0.0), {30.0 + shift, 0.0});
    sc.id = "corridor" + std::to_string(i);
    out.push_back(sc);
  }
  return out;
}

/// Toy-sized learner: coarse cells and a fast learning rate so 500 episodes
/// cover the reachable part of the grid.
QLearningParams corridor_params()
{
  QLearningParams p;
  p.episodes = 500;
  p.learning_rate = 0.5;
  p.grid.goal_dx_cell = p.grid.goal_dy_cell = 2.0;
  p.grid.vx_cell = p.grid.vy_cell = 1.0;
  p.reward = RewardParams::beam();
  return p;
}

TEST(Discretize, IndexAndClamping)
{
  GridSpec g;
  const auto a = discretize(g, at_rest(0.0, 0.0), {0.2, 0.2});
  const auto b = discretize(g, at_rest(0.0, 0.0), {0.3, 0.4});
  EXPECT_EQ(a.index, b.index);
  EXPECT_FALSE(a.clamped);
  const auto c = discretize(g, at_rest(0.0, 0.0), {0.7, 0.2});
  EXPECT_NE(a.index, c.index);
  const auto far = discretize(g, at_rest(0.0, 0.0), {1e6, 0.0});
  const auto edge = discretize(g, at_rest(0.0, 0.0), {199.9, 0.0});
  EXPECT_TRUE(far.clamped);
  EXPECT_EQ(far.index, edge.index);
}

TEST(QLearning, ZeroTablePicksFirstAction)
{
  QTable table;
  for (std::int64_t cell : {0, 17, 123456}) EXPECT_EQ(table.greedy(cell), 0u);
  const auto sc = corridor(1).front();
  QLearningParams p;
  const auto r = rollout_policy(table, sc, 3, nullptr, p);
  ASSERT_TRUE(r.attempt.has_value());
  EXPECT_EQ(action(0), core::Vec2::Zero());
  for (std::size_t t = 0; t < 3; ++t) {
    EXPECT_EQ((*r.attempt)[t].acceleration(), action(0)) << t;
  }
}

TEST(QLearning, ZeroStepsFailsUnlessAtGoal)
{
  const QTable table;
  QLearningParams p;
  auto sc = corridor(1).front();
  auto r = rollout_policy(table, sc, 0, nullptr, p);
  EXPECT_EQ(r.status, planner::PlanStatus::Infeasible);
  EXPECT_EQ(r.planned_steps, 0u);
  sc.goal = {4.0, 0.0};
  r = rollout_policy(table, sc, 0, nullptr, p);
  EXPECT_EQ(r.status, planner::PlanStatus::Feasible);
}

TEST(QLearning, OneEpisodeStoresOnlyVisitedCells)
{
  QLearningParams p;
  p.episodes = 1;
  p.max_steps = 20;
  const auto table = mdp_icl_train(corridor(1), nullptr, p, 3);
  EXPECT_EQ(table.train_log.size(), 1u);
  EXPECT_GE(table.cells.size(), 1u);
  EXPECT_LE(table.cells.size(), 20u);
}

TEST(QLearning, SameSeedSameTable)
{
  QLearningParams p;
  p.episodes = 30;
  const auto a = mdp_icl_train(corridor(3), nullptr, p, 9);
  const auto b = mdp_icl_train(corridor(3), nullptr, p, 9);
  EXPECT_EQ(a.cells, b.cells);
  EXPECT_EQ(a.train_log, b.train_log);
  const auto c = mdp_icl_train(corridor(3), nullptr, p, 10);
  EXPECT_NE(a.train_log, c.train_log);
}

TEST(QLearning, CorridorPolicyReachesGoal)
{
  // One greedy evaluation rollout per independently trained table.
  const auto scenarios = corridor(1);
  const auto p = corridor_params();
  std::size_t reached = 0;
  const std::size_t runs = 20;
  for (std::uint64_t seed = 1; seed <= runs; ++seed) {
    const auto table = mdp_icl_train(scenarios, nullptr, p, seed);
    const auto r = rollout_policy(table, scenarios.front(), 100, nullptr, p);
    if (r.feasible()) {
      ++reached;
      EXPECT_LE(r.planned_steps, 100u);
    }
  }
  EXPECT_GE(static_cast<double>(reached), 0.9 * static_cast<double>(runs));
}

TEST(QLearning, SmoothedReturnsSettleLate)
{
  const auto p = corridor_params();
  const auto table = mdp_icl_train(corridor(1), nullptr, p, 1);
  const auto & log = table.train_log;
  ASSERT_EQ(log.size(), p.episodes);
  const std::size_t window = 50;
  std::vector<double> smooth;
  for (std::size_t i = 0; i + window <= log.size(); i += window) {
    smooth.push_back(std::accumulate(log.begin() + i, log.begin() + i + window, 0.0) / window);
  }
  // Window means covering the final third never decrease.
  for (std::size_t i = smooth.size() * 2 / 3 + 1; i < smooth.size(); ++i) {
    EXPECT_GE(smooth[i], smooth[i - 1]) << i;
  }
}

TEST(QLearning, JsonRoundTrip)
{
  QLearningParams p;
  p.episodes = 5;
  const auto table = mdp_icl_train(corridor(2), nullptr, p, 4);
  const auto path = std::filesystem::temp_directory_path() / "scplan_qtable_test.json";
  save_qtable(table, path);
  const auto back = load_qtable(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.grid, table.grid);
  EXPECT_EQ(back.cells, table.cells);
  EXPECT_EQ(back.train_log, table.train_log);
  EXPECT_EQ(back.clamped_events, table.clamped_events);

  auto j = to_json(table);
  j["cells"][j["cells"].begin().key()][0] = "x";
  EXPECT_ANY_THROW(qtable_from_json(j));
}

TEST(QLearning, ParamChecks)
{
  QLearningParams p;
  p.episodes = 0;
  EXPECT_THROW(mdp_icl_train(corridor(1), nullptr, p, 1), core::InvalidInput);
  p = QLearningParams{};
  EXPECT_THROW(mdp_icl_train({}, nullptr, p, 1), core::InvalidInput);
  p.grid.vy_cell = 0.0;
  EXPECT_THROW(p.validate(), core::InvalidInput);
}

}  // namespace
}  // namespace scplan::baselines
