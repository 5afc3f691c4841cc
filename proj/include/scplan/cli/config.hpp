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

#ifndef SCPLAN__CLI__CONFIG_HPP_
#define SCPLAN__CLI__CONFIG_HPP_

#include "scplan/baselines/beam_search.hpp"
#include "scplan/baselines/q_learning.hpp"
#include "scplan/eval/metrics.hpp"
#include "scplan/icl/phi_model.hpp"
#include "scplan/ingest/io.hpp"
#include "scplan/ingest/synth.hpp"
#include "scplan/planner/scp.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scplan::cli
{

using ingest::Json;

/// Bad flags, unknown names, or an invalid combination of settings.
class UsageError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Relative paths resolve against the working directory. Inputs left unset
/// default to the files a previous command wrote into `out`.
struct PathsConfig
{
  std::string out{"out"};
  std::optional<std::string> tracks;
  std::optional<std::string> meta;
  std::optional<std::string> transitions;
  std::optional<std::string> scenarios;
  std::optional<std::string> model;

  std::filesystem::path transitions_or_default() const;
  std::filesystem::path scenarios_or_default() const;
  std::filesystem::path model_or_default() const;
};

struct IngestConfig
{
  /// Scenario kind of a synthetic recording; unset reads `paths.tracks`.
  std::optional<std::string> synth;
  std::size_t n{20};
  std::size_t steps{ingest::kDefaultSynthSteps};
  /// Scenario kind assigned to recorded tracks.
  std::string kind{"intersection"};
  bool highway_auto_direction{false};
  double goal_tol{0.0};
  std::array<double, 3> split{0.7, 0.15, 0.15};
  double ttc_cap{ingest::kDefaultTtcCap};
};

struct TrainSection
{
  std::string variant{"quadratic"};
  /// The seed comes from RunConfig::seed.
  icl::TrainConfig config{};
  std::size_t convexity_pairs{10000};
};

struct PlanSection
{
  std::string objective{"time"};
  /// Fixed horizon for the fixed-horizon objectives; the scenario's
  /// reference length when unset.
  std::optional<std::size_t> horizon;
  /// Enforce the learned cost as a constraint.
  bool soft{false};
  double time_soft_weight{1.0};
  /// Plan only the first `limit` scenarios.
  std::optional<std::size_t> limit;
};

struct BeamSection
{
  baselines::BeamConfig config{};
  bool exhaustive{false};
};

struct EvalSection
{
  std::string dataset{"synthetic"};
  /// Result files, directories or glob patterns.
  std::vector<std::string> results;
  /// Load the model to report the soft-constraint row.
  bool soft{false};
  eval::CheckConfig check{};
  eval::SuccessBounds bounds{};
};

struct BenchSection
{
  std::vector<std::size_t> horizons{10, 20, 40, 80};
  std::vector<std::size_t> depths{2, 3, 4};
  std::size_t repeats{3};
};

struct RunConfig
{
  std::uint64_t seed{0};
  std::size_t workers{1};
  /// Wall-clock fields in outputs and manifests; off keeps reruns byte-identical.
  bool record_timing{false};
  PathsConfig paths{};
  core::Limits limits{};
  IngestConfig ingest{};
  TrainSection train{};
  planner::ScpConfig scp{};
  PlanSection plan{};
  BeamSection beam{};
  baselines::QLearningParams mdp{};
  EvalSection eval{};
  BenchSection bench{};

  /// Throws UsageError for settings no command can run with.
  void validate() const;
};

/// Canonical form with every key present.
Json to_json(const RunConfig & config);

/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig run_config_from_json(const Json & j);
RunConfig load_run_config(const std::filesystem::path & path);

/// SHA-256 of the canonical form with object keys sorted.
std::string config_hash(const RunConfig & config);

}  // namespace scplan::cli

#endif  // SCPLAN__CLI__CONFIG_HPP_
