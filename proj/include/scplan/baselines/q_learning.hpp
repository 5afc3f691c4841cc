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

#ifndef SCPLAN__BASELINES__Q_LEARNING_HPP_
#define SCPLAN__BASELINES__Q_LEARNING_HPP_

#include "scplan/baselines/beam_search.hpp"
#include "scplan/ingest/io.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

namespace scplan::baselines
{

/// Uniform grid over (goal_x - x, goal_y - y, vx, vy) with one cell size per
/// dimension. Values beyond the extents fall into the boundary cell.
struct GridSpec
{
  double goal_dx_cell{0.5};
  double goal_dy_cell{0.5};
  double vx_cell{0.5};
  double vy_cell{0.5};
  double position_extent{200.0};
  double velocity_extent{15.0};

  void validate() const;
  bool operator==(const GridSpec &) const = default;
};

struct CellIndex
{
  std::int64_t index{0};
  /// Some coordinate lay outside the grid.
  bool clamped{false};
};

CellIndex discretize(const GridSpec & grid, const core::State & s, const core::Vec2 & goal);

using ActionValues = std::array<double, kNumActions>;

struct QTable
{
  GridSpec grid;
  /// Only cells that received an update are stored.
  std::map<std::int64_t, ActionValues> cells;
  /// Undiscounted return of every training episode.
  std::vector<double> train_log;
  std::size_t clamped_events{0};

  /// Zero for unseen cells.
  ActionValues values(std::int64_t cell) const;
  /// Highest value, ties to the lowest action index.
  std::size_t greedy(std::int64_t cell) const;
};

struct QLearningParams
{
  double learning_rate{0.001};
  double gamma{0.99};
  double exploration{0.1};
  std::size_t episodes{50};
  std::size_t max_steps{100};
  double goal_radius{kSuccessRadius};
  GridSpec grid{};
  RewardParams reward{RewardParams::mdp()};

  void validate() const;
};

/// Tabular Q-learning with epsilon-greedy exploration; episode e starts from
/// scenarios[e % n]. Deterministic given the seed.
QTable mdp_icl_train(
  const std::vector<core::Scenario> & scenarios, const icl::PhiModel * phi, const QLearningParams & params,
  std::uint64_t seed);

/// Greedy rollout until the goal region or `max_steps`. Feasible iff the goal
/// region is reached and the shared post-check passes.
planner::PlanResult rollout_policy(
  const QTable & table, const core::Scenario & scenario, std::size_t max_steps, const icl::PhiModel * phi,
  const QLearningParams & params);

using ingest::Json;
Json to_json(const GridSpec & grid);
GridSpec grid_spec_from_json(const Json & j);
/// {grid_spec, cells: {"<index>": [9 values]}, train_log, clamped_events}
Json to_json(const QTable & table);
QTable qtable_from_json(const Json & j);
void save_qtable(const QTable & table, const std::filesystem::path & path);
QTable load_qtable(const std::filesystem::path & path);

}  // namespace scplan::baselines

#endif  // SCPLAN__BASELINES__Q_LEARNING_HPP_
