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

#ifndef SCPLAN__CLI__COMMANDS_HPP_
#define SCPLAN__CLI__COMMANDS_HPP_

#include "scplan/cli/config.hpp"
#include "scplan/cli/manifest.hpp"
#include "scplan/planner/scp.hpp"

#include <exception>
#include <functional>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace scplan::cli
{

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitUsage = 2, kExitTraining = 3 };

/// A trained model failed one of its convexity verifiers.
class ConvexityFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception_ptr & error);

/// The manifest a command wrote, and where.
struct CommandResult
{
  RunManifest manifest;
  std::filesystem::path manifest_path;
  /// Human-readable summary for the terminal.
  std::string message;
};

/// Objective by command-line name: time, distance, effort, jerk, soft, time_soft.
planner::Objective parse_objective(const std::string & name, double time_soft_weight);

/// Scenario file written by ingest: {"scenarios": [...]} or a bare array.
std::vector<core::Scenario> load_scenarios(const std::filesystem::path & path);

/// Files named by paths, directories (their *.json files) or glob patterns,
/// sorted and deduplicated.
std::vector<std::filesystem::path> expand_result_patterns(const std::vector<std::string> & patterns);

/// Batch summary: counts, percentages, and compute-time statistics (null
/// unless `with_timing`).
Json plan_summary(const std::vector<planner::PlanResult> & results, const std::string & objective, bool with_timing);

/// Runs `fn(i)` for i in [0, n) on up to `workers` threads. Rethrows the
/// failure with the lowest index.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> & fn);

CommandResult cmd_ingest(const RunConfig & config);
CommandResult cmd_train(const RunConfig & config);
CommandResult cmd_plan(const RunConfig & config);
/// `method` is "beam" or "mdp".
CommandResult cmd_baseline(const RunConfig & config, const std::string & method);
CommandResult cmd_eval(const RunConfig & config);
CommandResult cmd_bench(const RunConfig & config);

/// Parses arguments, runs one command, and maps failures to exit codes.
int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace scplan::cli

#endif  // SCPLAN__CLI__COMMANDS_HPP_
