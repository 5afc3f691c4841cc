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

#include "scplan/cli/commands.hpp"

#include "scplan/baselines/beam_search.hpp"
#include "scplan/baselines/q_learning.hpp"
#include "scplan/cli/svg.hpp"
#include "scplan/eval/report.hpp"
#include "scplan/icl/convexity.hpp"
#include "scplan/icl/model_io.hpp"
#include "scplan/icl/training.hpp"
#include "scplan/ingest/dataset.hpp"
#include "scplan/ingest/scenarios.hpp"
#include "scplan/ingest/synth.hpp"
#include "scplan/ingest/tracks.hpp"
#include "scplan/planner/plan_io.hpp"

#include "CLI11.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace scplan::cli
{

namespace fs = std::filesystem;

namespace
{

/// Collects written files and their digests for the manifest.
class Outputs
{
public:
  explicit Outputs(fs::path root) : root_(std::move(root)) {}

  const fs::path & root() const { return root_; }

  void text(const fs::path & relative, std::string_view content)
  {
    files_.push_back(write_text(root_, relative, content));
  }

  void json(const fs::path & relative, const Json & j) { text(relative, j.dump(2) + "\n"); }

  /// A file at a caller-chosen location, listed relative to the output
  /// directory when it lies inside it.
  void text_at(const fs::path & path, std::string_view content)
  {
    const auto rel = path.lexically_relative(root_);
    if (!rel.empty() && *rel.begin() != "..") {
      text(rel, content);
    } else {
      auto d = write_text({}, path, content);
      files_.push_back(std::move(d));
    }
  }

  std::vector<FileDigest> sorted() const
  {
    auto out = files_;
    std::sort(out.begin(), out.end(), [](const auto & a, const auto & b) { return a.path < b.path; });
    return out;
  }

private:
  fs::path root_;
  std::vector<FileDigest> files_;
};

/// Manifest bookkeeping shared by every command.
class Run
{
public:
  Run(const RunConfig & config, std::string command)
  : config_(config), outputs_(config.paths.out)
  {
    manifest_.command = std::move(command);
    manifest_.config_hash = config_hash(config);
    manifest_.seed = config.seed;
    manifest_.config = to_json(config);
    if (config.record_timing) manifest_.started_at = utc_timestamp();
    fs::create_directories(config.paths.out);
  }

  Outputs & outputs() { return outputs_; }

  /// Checks the input exists and records its digest.
  fs::path input(const fs::path & path)
  {
    if (!fs::is_regular_file(path)) throw core::InvalidInput("missing input file " + path.string());
    manifest_.inputs.push_back(digest_file(path));
    return path;
  }

  CommandResult finish(const std::string & name)
  {
    if (config_.record_timing) manifest_.finished_at = utc_timestamp();
    manifest_.outputs = outputs_.sorted();
    const auto path = fs::path(config_.paths.out) / ("manifest_" + name + ".json");
    write_manifest(manifest_, path);
    return {manifest_, path, {}};
  }

private:
  const RunConfig & config_;
  Outputs outputs_;
  RunManifest manifest_;
};

std::string read_file(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw core::InvalidInput("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Scenario ids as file names.
std::string file_stem(const std::string & id)
{
  std::string out = id;
  for (auto & c : out) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out.empty() ? std::string("scenario") : out;
}

std::unique_ptr<icl::PhiModel> load_phi(Run & run, const fs::path & path)
{
  run.input(path);
  return std::make_unique<icl::PhiModel>(icl::load_model(path));
}

std::vector<core::Scenario> selected_scenarios(const RunConfig & config, Run & run)
{
  auto scenarios = load_scenarios(run.input(config.paths.scenarios_or_default()));
  if (config.plan.limit && *config.plan.limit < scenarios.size()) scenarios.erase(scenarios.begin() + static_cast<std::ptrdiff_t>(*config.plan.limit), scenarios.end());
  if (scenarios.empty()) throw core::InvalidInput("no scenarios to run");
  return scenarios;
}

std::string fixed(double v, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

/// Writes per-scenario results and plots under results/<method>/ and svg/<method>/.
void emit_results(
  Outputs & outputs, const std::vector<core::Scenario> & scenarios,
  const std::vector<planner::PlanResult> & results, const std::string & method, bool with_timing)
{
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto stem = file_stem(scenarios[i].id);
    const double dt = scenarios[i].limits.dt;
    outputs.json(fs::path("results") / method / (stem + ".json"), planner::to_json(results[i], dt, with_timing));
    outputs.text(fs::path("svg") / method / (stem + ".svg"), render_svg(scenarios[i], results[i]));
  }
}

std::string summary_line(const Json & s)
{
  std::ostringstream os;
  os << "tracks " << s.at("tracks").get<std::size_t>() << "  feasible " << s.at("feasible").get<std::size_t>()
     << "  infeasible " << fixed(s.at("infeasible_pct").get<double>(), 1) << "%  bad "
     << fixed(s.at("bad_pct").get<double>(), 1) << "%";
  return os.str();
}

std::string timing_line(const std::vector<planner::PlanResult> & results)
{
  const auto s = plan_summary(results, "", true).at("compute_time_s");
  std::ostringstream os;
  os << "compute time avg " << fixed(s.at("avg").get<double>(), 4) << " s  std " << fixed(s.at("std").get<double>(), 4)
     << "  min " << fixed(s.at("min").get<double>(), 4) << "  max " << fixed(s.at("max").get<double>(), 4);
  return os.str();
}

planner::PlanResult plan_one(
  const core::Scenario & scenario, const planner::Objective & objective, const RunConfig & config,
  const icl::PhiModel * phi)
{
  using planner::ObjectiveKind;
  if (objective.kind == ObjectiveKind::TimeSoftWeighted) {
    return planner::plan_time_soft(scenario, config.scp, *phi, objective.weight);
  }
  std::optional<std::size_t> horizon = config.plan.horizon;
  if (!horizon && scenario.reference) horizon = scenario.reference->horizon();
  const bool searched = objective.kind == ObjectiveKind::MinTime;
  if (!searched && !horizon) {
    throw UsageError("scenario " + scenario.id + " has no reference path; set plan.horizon");
  }
  if (core::is_highway(scenario.kind)) {
    return planner::plan_highd(scenario, objective, searched ? std::nullopt : horizon, config.scp, phi);
  }
  if (searched) return planner::plan_min_time(scenario, config.scp, phi);
  return planner::plan_scp(scenario, objective, *horizon, config.scp, phi);
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <class F>
double seconds(F && f)
{
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int exit_code_for(const std::exception_ptr & error)
{
  try {
    std::rethrow_exception(error);
  } catch (const icl::TrainingError &) {
    return kExitTraining;
  } catch (const ConvexityFailure &) {
    return kExitTraining;
  } catch (const ingest::SchemaError &) {
    return kExitUsage;
  } catch (const ingest::RowError &) {
    return kExitUsage;
  } catch (const icl::UnsupportedVariant &) {
    return kExitUsage;
  } catch (const nlohmann::json::exception &) {
    return kExitUsage;
  } catch (const std::invalid_argument &) {
    // UsageError, InvalidInput and ScenarioRejected.
    return kExitUsage;
  } catch (...) {
    return kExitInternal;
  }
}

planner::Objective parse_objective(const std::string & name, double time_soft_weight)
{
  using planner::ObjectiveKind;
  static const std::map<std::string, ObjectiveKind> kNames{
    {"time", ObjectiveKind::MinTime},   {"distance", ObjectiveKind::MinDistance},
    {"effort", ObjectiveKind::MinEffort}, {"jerk", ObjectiveKind::MinJerk},
    {"soft", ObjectiveKind::MaxSoft},   {"time_soft", ObjectiveKind::TimeSoftWeighted},
  };
  const auto it = kNames.find(name);
  if (it == kNames.end()) {
    throw UsageError("unknown objective '" + name + "' (time, distance, effort, jerk, soft, time_soft)");
  }
  if (it->second == ObjectiveKind::TimeSoftWeighted) return planner::Objective::time_soft(time_soft_weight);
  return planner::Objective{it->second, 0.0};
}

std::vector<core::Scenario> load_scenarios(const fs::path & path)
{
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error & e) {
    throw core::InvalidInput(path.string() + ": " + e.what());
  }
  const Json & list = j.is_object() ? j.at("scenarios") : j;
  if (!list.is_array()) throw core::InvalidInput(path.string() + ": expected a list of scenarios");
  std::vector<core::Scenario> out;
  out.reserve(list.size());
  for (const auto & s : list) out.push_back(ingest::scenario_from_json(s));
  return out;
}

std::vector<fs::path> expand_result_patterns(const std::vector<std::string> & patterns)
{
  std::set<fs::path> found;
  for (const auto & p : patterns) {
    if (fs::is_directory(p)) {
      for (const auto & entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") found.insert(entry.path());
      }
      continue;
    }
    glob_t g{};
    if (::glob(p.c_str(), 0, nullptr, &g) == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) {
        if (fs::is_regular_file(g.gl_pathv[i])) found.insert(g.gl_pathv[i]);
      }
    }
    globfree(&g);
  }
  return {found.begin(), found.end()};
}

Json plan_summary(const std::vector<planner::PlanResult> & results, const std::string & objective, bool with_timing)
{
  std::size_t feasible = 0, infeasible = 0, bad_start = 0, bad_end = 0;
  for (const auto & r : results) {
    switch (r.status) {
      case planner::PlanStatus::Feasible:
        ++feasible;
        break;
      case planner::PlanStatus::Infeasible:
        ++infeasible;
        break;
      case planner::PlanStatus::BadStart:
        ++bad_start;
        break;
      case planner::PlanStatus::BadEnd:
        ++bad_end;
        break;
    }
  }
  const double n = static_cast<double>(results.size());
  const auto pct = [&](std::size_t k) { return results.empty() ? 0.0 : 100.0 * static_cast<double>(k) / n; };
  Json timing = nullptr;
  if (with_timing && !results.empty()) {
    double sum = 0.0, lo = results.front().compute_time, hi = lo;
    for (const auto & r : results) {
      sum += r.compute_time;
      lo = std::min(lo, r.compute_time);
      hi = std::max(hi, r.compute_time);
    }
    const double avg = sum / n;
    double ss = 0.0;
    for (const auto & r : results) ss += (r.compute_time - avg) * (r.compute_time - avg);
    timing = Json{{"avg", avg}, {"std", std::sqrt(ss / n)}, {"min", lo}, {"max", hi}};
  }
  Json rows = Json::array();
  for (const auto & r : results) {
    rows.push_back({
      {"scenario_id", r.scenario_id},
      {"status", std::string(planner::to_string(r.status))},
      {"planned_steps", r.planned_steps},
      {"objective_value", r.objective_value},
    });
  }
  return Json{
    {"objective", objective},
    {"tracks", results.size()},
    {"feasible", feasible},
    {"infeasible", infeasible},
    {"bad", bad_start + bad_end},
    {"bad_start", bad_start},
    {"bad_end", bad_end},
    {"feasible_pct", pct(feasible)},
    {"infeasible_pct", pct(infeasible)},
    {"bad_pct", pct(bad_start + bad_end)},
    {"compute_time_s", timing},
    {"results", rows},
  };
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> & fn)
{
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto drain = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t extra = std::min(workers, n) > 0 ? std::min(workers, n) - 1 : 0;
  std::vector<std::thread> pool;
  pool.reserve(extra);
  for (std::size_t k = 0; k < extra; ++k) pool.emplace_back(drain);
  drain();
  for (auto & t : pool) t.join();
  for (const auto & e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

CommandResult cmd_ingest(const RunConfig & config)
{
  Run run(config, "ingest");
  auto & out = run.outputs();
  const auto & ic = config.ingest;

  std::vector<ingest::TrackRecord> records;
  ingest::RecordingMeta meta;
  std::vector<core::Scenario> scenarios;
  std::vector<ingest::SkipReport> skipped;

  if (ic.synth) {
    const auto kind = core::scenario_kind_from_string(*ic.synth);
    auto rec = ingest::synth_tracks(kind, ic.n, config.seed, config.limits, ic.steps);
    records = std::move(rec.records);
    meta = rec.meta;
    scenarios = ingest::synth_scenarios(kind, ic.n, config.seed, config.limits, ic.steps);
    out.text("tracks.csv", ingest::serialize_tracks(records));
    out.text("meta.txt", "frameRate=" + fixed(meta.frame_rate, 9) + "\nrecordingId=" + meta.recording_id + "\n");
  } else {
    if (!config.paths.tracks) throw UsageError("ingest needs paths.tracks (--tracks) or --synth");
    if (config.paths.meta) {
      std::istringstream in(read_file(run.input(*config.paths.meta)));
      meta = ingest::parse_meta(in);
    }
    const fs::path tracks_path = run.input(*config.paths.tracks);
    std::istringstream in(read_file(tracks_path));
    try {
      records = ingest::parse_tracks(in, meta);
    } catch (const ingest::SchemaError & e) {
      throw ingest::SchemaError(tracks_path.string() + ": " + e.what(), e.column());
    } catch (const ingest::RowError & e) {
      throw ingest::RowError(tracks_path.string() + ":" + std::to_string(e.line()) + ": " + e.what(), e.line());
    }
    ingest::PairingConfig pairing;
    pairing.kind = core::scenario_kind_from_string(ic.kind);
    pairing.highway_auto_direction = ic.highway_auto_direction;
    pairing.limits = config.limits;
    pairing.goal_tol = ic.goal_tol;
    auto extraction = ingest::extract_scenarios(records, meta, pairing);
    scenarios = std::move(extraction.scenarios);
    skipped = std::move(extraction.skipped);
  }

  core::Limits data_limits = config.limits;
  data_limits.dt = meta.frame_interval();
  auto ds = ingest::build_transitions(records, data_limits, ic.ttc_cap);
  ds = ingest::split_dataset(std::move(ds), ic.split, config.seed);
  out.text("transitions.ndjson", ingest::write_transitions(ds));

  Json scen = Json::array();
  for (const auto & s : scenarios) scen.push_back(ingest::to_json(s));
  Json skip = Json::array();
  for (const auto & s : skipped) skip.push_back({{"track_id", s.track_id}, {"reason", s.reason}});
  out.json("scenarios.json", Json{{"scenarios", scen}, {"skipped", skip}});

  std::array<std::set<std::int64_t>, 3> ids;
  for (const auto & t : ds.transitions) ids[static_cast<std::size_t>(t.split)].insert(t.track_id);
  Json splits{{"seed", config.seed}, {"fractions", ic.split}};
  for (auto s : {ingest::Split::Train, ingest::Split::Val, ingest::Split::Test}) {
    const auto & set = ids[static_cast<std::size_t>(s)];
    splits[std::string(ingest::to_string(s))] = std::vector<std::int64_t>(set.begin(), set.end());
  }
  out.json("splits.json", splits);
  return run.finish("ingest");
}

CommandResult cmd_train(const RunConfig & config)
{
  Run run(config, "train");
  std::istringstream in(read_file(run.input(config.paths.transitions_or_default())));
  const auto ds = ingest::read_transitions(in);
  if (ds.count(ingest::Split::Train) == 0) throw core::InvalidInput("no training transitions");

  icl::TrainConfig tc = config.train.config;
  tc.seed = config.seed;
  const auto variant = icl::variant_from_string(config.train.variant);
  auto model = icl::train_phi(ds, tc, variant);

  icl::EmpiricalOptions options;
  options.n_pairs = config.train.convexity_pairs;
  options.seed = config.seed;
  model.reports = icl::verify_all(model, options);
  run.outputs().text_at(config.paths.model_or_default(), icl::to_json(model).dump(2) + "\n");
  auto result = run.finish("train");

  for (const auto & r : model.reports) {
    if (!r.passed) {
      throw ConvexityFailure(
        std::string(icl::to_string(r.mode)) + " convexity check failed (worst violation " +
        std::to_string(r.worst_violation) + ")");
    }
  }
  return result;
}

CommandResult cmd_plan(const RunConfig & config)
{
  Run run(config, "plan");
  const auto objective = parse_objective(config.plan.objective, config.plan.time_soft_weight);
  const bool needs_phi = config.plan.soft || objective.kind == planner::ObjectiveKind::MaxSoft ||
                         objective.kind == planner::ObjectiveKind::TimeSoftWeighted;
  const auto scenarios = selected_scenarios(config, run);
  std::unique_ptr<icl::PhiModel> phi;
  if (needs_phi) phi = load_phi(run, config.paths.model_or_default());

  std::vector<std::optional<planner::PlanResult>> slots(scenarios.size());
  parallel_for(scenarios.size(), config.workers, [&](std::size_t i) {
    slots[i] = plan_one(scenarios[i], objective, config, phi.get());
  });
  std::vector<planner::PlanResult> results;
  results.reserve(slots.size());
  for (auto & r : slots) {
    r->method = "convex";
    results.push_back(std::move(*r));
  }

  auto & out = run.outputs();
  emit_results(out, scenarios, results, "convex", config.record_timing);
  const auto summary = plan_summary(results, config.plan.objective, config.record_timing);
  out.json("plan_summary.json", summary);
  auto done = run.finish("plan");
  done.message = summary_line(summary) + "\n" + timing_line(results);
  return done;
}

CommandResult cmd_baseline(const RunConfig & config, const std::string & method)
{
  if (method != "beam" && method != "mdp") throw UsageError("unknown baseline '" + method + "' (beam, mdp)");
  Run run(config, "baseline");
  const auto scenarios = selected_scenarios(config, run);
  std::unique_ptr<icl::PhiModel> phi;
  if (config.plan.soft) phi = load_phi(run, config.paths.model_or_default());
  auto & out = run.outputs();

  std::vector<std::optional<planner::PlanResult>> slots(scenarios.size());
  std::string name = method;
  if (method == "beam") {
    name = config.beam.exhaustive ? "exhaustive" : "beam";
    parallel_for(scenarios.size(), config.workers, [&](std::size_t i) {
      slots[i] = baselines::beam_search_plan(
        scenarios[i], config.beam.config, phi.get(), baselines::RewardParams::beam(), config.beam.exhaustive);
    });
  } else {
    const auto table = baselines::mdp_icl_train(scenarios, phi.get(), config.mdp, config.seed);
    out.json(fs::path("mdp") / "qtable.json", baselines::to_json(table));
    std::string log = "episode,return\n";
    for (std::size_t e = 0; e < table.train_log.size(); ++e) {
      log += std::to_string(e) + "," + Json(table.train_log[e]).dump() + "\n";
    }
    out.text(fs::path("mdp") / "train_log.csv", log);
    parallel_for(scenarios.size(), config.workers, [&](std::size_t i) {
      slots[i] = baselines::rollout_policy(table, scenarios[i], config.mdp.max_steps, phi.get(), config.mdp);
    });
  }
  std::vector<planner::PlanResult> results;
  results.reserve(slots.size());
  for (auto & r : slots) results.push_back(std::move(*r));

  emit_results(out, scenarios, results, name, config.record_timing);
  const auto summary = plan_summary(results, name, config.record_timing);
  out.json(name + "_summary.json", summary);
  auto done = run.finish("baseline_" + name);
  done.message = summary_line(summary) + "\n" + timing_line(results);
  return done;
}

CommandResult cmd_eval(const RunConfig & config)
{
  Run run(config, "eval");
  auto patterns = config.eval.results;
  if (patterns.empty()) patterns.push_back((fs::path(config.paths.out) / "results" / "*" / "*.json").string());
  const auto files = expand_result_patterns(patterns);
  if (files.empty()) throw UsageError("no result files matched");

  std::map<std::string, eval::MethodRun> runs;
  for (const auto & f : files) {
    run.input(f);
    planner::PlanResult r;
    try {
      r = planner::plan_result_from_json(Json::parse(read_file(f)));
    } catch (const nlohmann::json::exception & e) {
      throw core::InvalidInput(f.string() + ": not a plan result: " + e.what());
    }
    auto & mr = runs[r.method];
    mr.method = r.method;
    mr.dataset = config.eval.dataset;
    mr.results.push_back(std::move(r));
  }

  std::map<std::string, core::Scenario> by_id;
  for (auto & s : load_scenarios(run.input(config.paths.scenarios_or_default()))) {
    const auto id = s.id;
    by_id.emplace(id, std::move(s));
  }
  std::unique_ptr<icl::PhiModel> phi;
  if (config.eval.soft) phi = load_phi(run, config.paths.model_or_default());

  eval::ReportConfig rc;
  rc.check = config.eval.check;
  rc.bounds = config.eval.bounds;
  rc.with_timing = config.record_timing;
  std::vector<eval::MethodRun> list;
  for (auto & [name, mr] : runs) list.push_back(std::move(mr));
  const auto reports = eval::build_reports(list, by_id, phi.get(), rc);

  auto & out = run.outputs();
  out.json("report.json", eval::to_json(reports));
  out.text("report.csv", eval::to_csv(reports));
  return run.finish("eval");
}

CommandResult cmd_bench(const RunConfig & config)
{
  const auto & b = config.bench;
  if (b.horizons.empty() && b.depths.empty()) throw UsageError("bench: empty sweep (set bench.horizons or bench.depths)");
  Run run(config, "bench");
  std::string csv = "sweep,parameter,runs,median_s,min_s,max_s,status\n";
  const auto row = [&](const char * sweep, std::size_t param, const std::vector<double> & t, const std::string & status) {
    csv += std::string(sweep) + "," + std::to_string(param) + "," + std::to_string(t.size()) + "," +
           fixed(median(t), 6) + "," + fixed(*std::min_element(t.begin(), t.end()), 6) + "," +
           fixed(*std::max_element(t.begin(), t.end()), 6) + "," + status + "\n";
  };

  const planner::Objective effort{planner::ObjectiveKind::MinEffort, 0.0};
  for (std::size_t horizon : b.horizons) {
    if (horizon < 1) throw UsageError("bench: horizons must be at least 1");
    const auto sc = ingest::synth_scenarios(core::ScenarioKind::Intersection, 1, config.seed, config.limits, horizon).at(0);
    const std::size_t steps = sc.reference ? sc.reference->horizon() : horizon;
    std::vector<double> times;
    std::string status;
    for (std::size_t k = 0; k < b.repeats; ++k) {
      times.push_back(seconds([&] {
        status = std::string(planner::to_string(planner::plan_scp(sc, effort, steps, config.scp).status));
      }));
    }
    row("planner_horizon", steps, times, status);
  }

  for (std::size_t depth : b.depths) {
    if (depth < 1) throw UsageError("bench: depths must be at least 1");
    auto sc = ingest::synth_scenarios(core::ScenarioKind::Intersection, 1, config.seed, config.limits).at(0);
    // Out of reach, so no branch stops early.
    sc.goal = sc.ego_init.position() + core::Vec2(1e4, 0.0);
    baselines::BeamConfig bc = config.beam.config;
    bc.depth = depth;
    std::vector<double> times;
    for (std::size_t k = 0; k < b.repeats; ++k) {
      times.push_back(seconds([&] {
        baselines::exhaustive_search(sc, bc, nullptr, baselines::RewardParams::beam());
      }));
    }
    row("exhaustive_depth", depth, times, "complete");
  }
  run.outputs().text("bench.csv", csv);
  return run.finish("bench");
}

int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Constraint-aware trajectory planning toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir, scenarios, model;
  std::optional<std::size_t> workers;
  bool timing = false;

  const auto common = [&](CLI::App * sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--workers", workers, "Worker threads for batch commands");
    sub->add_flag("--timing", timing, "Record wall-clock fields in outputs");
  };

  std::optional<std::string> tracks, meta, synth, kind, transitions, variant, objective, dataset;
  std::optional<std::size_t> n, steps, epochs, horizon, limit, width, depth, episodes, max_steps, repeats;
  std::vector<std::string> results;
  std::vector<std::size_t> horizons, depths;
  bool soft = false, exhaustive = false;
  std::string method;
  const std::vector<std::string> kinds{"intersection", "roundabout", "highway_rightward", "highway_leftward"};

  auto * ingest_cmd = app.add_subcommand("ingest", "Parse tracks (or synthesize them) into transitions and scenarios");
  common(ingest_cmd);
  ingest_cmd->add_option("--tracks", tracks, "Track CSV");
  ingest_cmd->add_option("--meta", meta, "Recording metadata (key=value lines)");
  ingest_cmd->add_option("--synth", synth, "Synthesize a recording of this scenario kind")->check(CLI::IsMember(kinds));
  ingest_cmd->add_option("--n", n, "Synthetic pair count");
  ingest_cmd->add_option("--steps", steps, "Synthetic steps per track");
  ingest_cmd->add_option("--kind", kind, "Scenario kind of recorded tracks")->check(CLI::IsMember(kinds));

  auto * train_cmd = app.add_subcommand("train", "Learn the soft-constraint cost");
  common(train_cmd);
  train_cmd->add_option("--transitions", transitions, "Transition NDJSON");
  train_cmd->add_option("--variant", variant, "quadratic or icn")->check(CLI::IsMember({"quadratic", "icn"}));
  train_cmd->add_option("--epochs", epochs, "Training epochs");
  train_cmd->add_option("--model", model, "Model output path");

  const std::vector<std::string> objectives{"time", "distance", "effort", "jerk", "soft", "time_soft"};
  auto * plan_cmd = app.add_subcommand("plan", "Plan every scenario with the convex planner");
  common(plan_cmd);
  plan_cmd->add_option("--scenarios", scenarios, "Scenario JSON");
  plan_cmd->add_option("--model", model, "Cost model JSON");
  plan_cmd->add_option("--objective", objective, "Objective")->check(CLI::IsMember(objectives));
  plan_cmd->add_option("--horizon", horizon, "Fixed horizon in steps");
  plan_cmd->add_option("--limit", limit, "Plan only the first N scenarios");
  plan_cmd->add_flag("--soft", soft, "Enforce the learned cost");

  auto * baseline_cmd = app.add_subcommand("baseline", "Run a search or tabular baseline");
  common(baseline_cmd);
  baseline_cmd->add_option("method", method, "beam or mdp")->required()->check(CLI::IsMember({"beam", "mdp"}));
  baseline_cmd->add_option("--scenarios", scenarios, "Scenario JSON");
  baseline_cmd->add_option("--model", model, "Cost model JSON");
  baseline_cmd->add_option("--limit", limit, "Run only the first N scenarios");
  baseline_cmd->add_flag("--soft", soft, "Score the learned cost");
  baseline_cmd->add_option("--width", width, "Beam width");
  baseline_cmd->add_option("--depth", depth, "Beam depth");
  baseline_cmd->add_flag("--exhaustive", exhaustive, "Enumerate every action sequence");
  baseline_cmd->add_option("--episodes", episodes, "Training episodes");
  baseline_cmd->add_option("--max-steps", max_steps, "Episode length");

  auto * eval_cmd = app.add_subcommand("eval", "Compute metrics over result files");
  common(eval_cmd);
  eval_cmd->add_option("--results", results, "Result files, directories or glob patterns");
  eval_cmd->add_option("--scenarios", scenarios, "Reference scenario JSON");
  eval_cmd->add_option("--model", model, "Cost model JSON");
  eval_cmd->add_option("--dataset", dataset, "Dataset label");
  eval_cmd->add_flag("--soft", soft, "Report the soft-constraint row");

  auto * bench_cmd = app.add_subcommand("bench", "Time the planner and the exhaustive search");
  common(bench_cmd);
  bench_cmd->add_option("--horizons", horizons, "Planner horizons");
  bench_cmd->add_option("--depths", depths, "Search depths");
  bench_cmd->add_option("--repeats", repeats, "Runs per point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig c = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    if (seed) c.seed = *seed;
    if (out_dir) c.paths.out = *out_dir;
    if (workers) c.workers = *workers;
    if (timing) c.record_timing = true;
    if (tracks) c.paths.tracks = *tracks;
    if (meta) c.paths.meta = *meta;
    if (synth) c.ingest.synth = *synth;
    if (n) c.ingest.n = *n;
    if (steps) c.ingest.steps = *steps;
    if (kind) c.ingest.kind = *kind;
    if (transitions) c.paths.transitions = *transitions;
    if (variant) c.train.variant = *variant;
    if (epochs) c.train.config.epochs = *epochs;
    if (scenarios) c.paths.scenarios = *scenarios;
    if (model) c.paths.model = *model;
    if (objective) c.plan.objective = *objective;
    if (horizon) c.plan.horizon = *horizon;
    if (limit) c.plan.limit = *limit;
    if (soft) {
      c.plan.soft = true;
      c.eval.soft = true;
    }
    if (width) c.beam.config.width = *width;
    if (depth) c.beam.config.depth = *depth;
    if (exhaustive) c.beam.exhaustive = true;
    if (episodes) c.mdp.episodes = *episodes;
    if (max_steps) c.mdp.max_steps = *max_steps;
    if (!results.empty()) c.eval.results = results;
    if (dataset) c.eval.dataset = *dataset;
    if (bench_cmd->count("--horizons")) c.bench.horizons = horizons;
    if (bench_cmd->count("--depths")) c.bench.depths = depths;
    if (repeats) c.bench.repeats = *repeats;
    c.validate();

    CommandResult r;
    if (*ingest_cmd) {
      r = cmd_ingest(c);
    } else if (*train_cmd) {
      r = cmd_train(c);
    } else if (*plan_cmd) {
      r = cmd_plan(c);
    } else if (*baseline_cmd) {
      r = cmd_baseline(c, method);
    } else if (*eval_cmd) {
      r = cmd_eval(c);
    } else {
      r = cmd_bench(c);
    }
    if (!r.message.empty()) out << r.message << '\n';
    out << r.manifest.command << ": wrote " << r.manifest.outputs.size() << " files, manifest "
        << r.manifest_path.string() << '\n';
    return kExitOk;
  } catch (const icl::TrainingError & e) {
    err << "error: training diverged at epoch " << e.epoch() << ": " << e.what() << '\n';
    return kExitTraining;
  } catch (const ingest::SchemaError & e) {
    err << "error: " << e.what() << " (column " << e.column() << ")\n";
    return kExitUsage;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(std::current_exception());
  } catch (...) {
    err << "error: unknown failure\n";
    return kExitInternal;
  }
}

}  // namespace scplan::cli
