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

#ifndef SCPLAN__EVAL__REPORT_HPP_
#define SCPLAN__EVAL__REPORT_HPP_

#include "scplan/baselines/reward.hpp"
#include "scplan/eval/metrics.hpp"
#include "scplan/ingest/io.hpp"
#include "scplan/planner/scp.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <string>

namespace scplan::eval
{

/// Results of one method on one dataset.
struct MethodRun
{
  std::string method;
  std::string dataset;
  std::vector<planner::PlanResult> results;
};

struct ReportConfig
{
  CheckConfig check{};
  SuccessBounds bounds{};
  /// Reward used to score every evaluated trajectory as one episode.
  baselines::RewardParams reward{baselines::RewardParams::beam()};
  /// Fill mean_time_s from the results' compute times.
  bool with_timing{false};
};

struct MetricsReport
{
  std::string method;
  std::string dataset;
  std::size_t results{0};
  std::size_t feasible_results{0};
  /// Results with a trajectory or an attempted trajectory.
  std::size_t evaluated{0};
  double plan_success_rate{0.0};

  /// Percent per constraint, C1 first; C7 only with a cost model.
  std::array<std::optional<double>, 7> violation_rate{};
  /// Mean over the reported rows except C5, which holds by construction.
  std::optional<double> mean_cv;
  std::optional<SuccessRates> success;
  std::optional<double> constraint_quality;
  std::optional<double> feasibility_rate;
  /// Pooled over every sample whose scenario carries a reference path.
  std::optional<TrajectoryQuality> quality;
  /// Mean of the three deltas relative to the reference's mean magnitudes, percent.
  std::optional<double> relative_deviation;
  std::optional<double> mean_duration_s;
  std::optional<double> mean_time_s;

  std::optional<double> reward_mean;
  std::array<std::optional<double>, 3> reward_scores{};
  bool reward_degenerate{false};
};

/// Episode return of a trajectory under the shared reward.
double episode_reward(
  const core::Trajectory & traj, const core::Scenario & scenario, const icl::PhiModel * phi,
  const baselines::RewardParams & params);

/// One report per run. Reward schemes are normalized across all runs; MinMax
/// and Log stay empty with fewer than two scored runs.
std::vector<MetricsReport> build_reports(
  const std::vector<MethodRun> & runs, const std::map<std::string, core::Scenario> & scenarios,
  const icl::PhiModel * phi, const ReportConfig & config = {});

ingest::Json to_json(const MetricsReport & report);
ingest::Json to_json(const std::vector<MetricsReport> & reports);

/// Header plus one row per report; empty cells for missing values.
std::string to_csv(const std::vector<MetricsReport> & reports);

void save_reports(
  const std::vector<MetricsReport> & reports, const std::filesystem::path & json_path,
  const std::filesystem::path & csv_path);

}  // namespace scplan::eval

#endif  // SCPLAN__EVAL__REPORT_HPP_
