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

#include "scplan/cli/config.hpp"

#include "scplan/cli/manifest.hpp"
#include "scplan/icl/model_io.hpp"
#include "scplan/planner/plan_io.hpp"

#include <fstream>
#include <set>

namespace scplan::cli
{

namespace
{

Json opt_json(const std::optional<std::string> & v) { return v ? Json(*v) : Json(nullptr); }
Json opt_json(const std::optional<std::size_t> & v) { return v ? Json(*v) : Json(nullptr); }
Json opt_json(const std::optional<double> & v) { return v ? Json(*v) : Json(nullptr); }

template <class T>
void read_opt(const Json & j, const char * key, std::optional<T> & out)
{
  if (!j.contains(key)) return;
  const auto & v = j.at(key);
  if (v.is_null()) {
    out.reset();
  } else {
    out = v.get<T>();
  }
}

/// Rejects keys the canonical section does not have.
void check_keys(const Json & j, const Json & canonical, const std::string & where)
{
  if (!j.is_object()) throw UsageError("config: " + where + " must be an object");
  for (const auto & item : j.items()) {
    if (!canonical.contains(item.key())) {
      throw UsageError("config: unknown key '" + (where.empty() ? "" : where + ".") + item.key() + "'");
    }
  }
}

Json to_json(const PathsConfig & p)
{
  return Json{
    {"out", p.out},
    {"tracks", opt_json(p.tracks)},
    {"meta", opt_json(p.meta)},
    {"transitions", opt_json(p.transitions)},
    {"scenarios", opt_json(p.scenarios)},
    {"model", opt_json(p.model)},
  };
}

Json to_json(const IngestConfig & c)
{
  return Json{
    {"synth", opt_json(c.synth)},
    {"n", c.n},
    {"steps", c.steps},
    {"kind", c.kind},
    {"highway_auto_direction", c.highway_auto_direction},
    {"goal_tol", c.goal_tol},
    {"split", c.split},
    {"ttc_cap", c.ttc_cap},
  };
}

Json train_json(const TrainSection & t)
{
  Json cfg = icl::to_json(t.config);
  cfg.erase("seed");
  Json j{{"variant", t.variant}, {"convexity_pairs", t.convexity_pairs}};
  for (const auto & item : cfg.items()) j[item.key()] = item.value();
  return j;
}

Json to_json(const PlanSection & p)
{
  return Json{
    {"objective", p.objective},
    {"horizon", opt_json(p.horizon)},
    {"soft", p.soft},
    {"time_soft_weight", p.time_soft_weight},
    {"limit", opt_json(p.limit)},
  };
}

Json to_json(const BeamSection & b)
{
  return Json{
    {"width", b.config.width},
    {"depth", b.config.depth},
    {"goal_radius", b.config.goal_radius},
    {"exhaustive", b.exhaustive},
  };
}

Json mdp_json(const baselines::QLearningParams & q)
{
  return Json{
    {"learning_rate", q.learning_rate},
    {"gamma", q.gamma},
    {"exploration", q.exploration},
    {"episodes", q.episodes},
    {"max_steps", q.max_steps},
    {"goal_radius", q.goal_radius},
    {"progress", q.reward.progress == baselines::ProgressKind::Delta ? "delta" : "absolute"},
    {"grid", baselines::to_json(q.grid)},
  };
}

Json to_json(const EvalSection & e)
{
  return Json{
    {"dataset", e.dataset},
    {"results", e.results},
    {"soft", e.soft},
    {"tol", e.check.tol},
    {"epsilon", opt_json(e.check.epsilon)},
    {"ttc_cap", e.check.ttc_cap},
    {"speed_change_bound", opt_json(e.bounds.speed_change)},
    {"accel_change_bound", opt_json(e.bounds.accel_change)},
  };
}

Json to_json(const BenchSection & b)
{
  return Json{{"horizons", b.horizons}, {"depths", b.depths}, {"repeats", b.repeats}};
}

/// Recursively sorts object keys.
nlohmann::json sorted(const Json & j)
{
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto & item : j.items()) out[item.key()] = sorted(item.value());
    return out;
  }
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto & v : j) out.push_back(sorted(v));
    return out;
  }
  return nlohmann::json::parse(j.dump());
}

}  // namespace

std::filesystem::path PathsConfig::transitions_or_default() const
{
  return transitions ? std::filesystem::path(*transitions) : std::filesystem::path(out) / "transitions.ndjson";
}

std::filesystem::path PathsConfig::scenarios_or_default() const
{
  return scenarios ? std::filesystem::path(*scenarios) : std::filesystem::path(out) / "scenarios.json";
}

std::filesystem::path PathsConfig::model_or_default() const
{
  return model ? std::filesystem::path(*model) : std::filesystem::path(out) / "model.json";
}

void RunConfig::validate() const
{
  const auto wrap = [](const auto & check) {
    try {
      check();
    } catch (const core::InvalidInput & e) {
      throw UsageError(std::string("config: ") + e.what());
    }
  };
  if (workers < 1) throw UsageError("config: workers must be at least 1");
  if (paths.out.empty()) throw UsageError("config: paths.out must not be empty");
  wrap([&] { limits.validate(); });
  wrap([&] { train.config.validate(); });
  wrap([&] { scp.validate(); });
  wrap([&] { beam.config.validate(); });
  wrap([&] { mdp.validate(); });
  wrap([&] { core::scenario_kind_from_string(ingest.kind); });
  if (ingest.synth) wrap([&] { core::scenario_kind_from_string(*ingest.synth); });
  wrap([&] { icl::variant_from_string(train.variant); });
  if (ingest.n < 1) throw UsageError("config: ingest.n must be at least 1");
  if (ingest.steps < 1) throw UsageError("config: ingest.steps must be at least 1");
  double total = 0.0;
  for (double f : ingest.split) {
    if (!(f >= 0.0)) throw UsageError("config: split fractions must be nonnegative");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) throw UsageError("config: split fractions must sum to 1");
  if (!(ingest.goal_tol >= 0.0)) throw UsageError("config: ingest.goal_tol must be nonnegative");
  if (plan.horizon && *plan.horizon < 1) throw UsageError("config: plan.horizon must be at least 1");
  if (!(plan.time_soft_weight >= 0.0)) throw UsageError("config: plan.time_soft_weight must be nonnegative");
  if (!(eval.check.tol >= 0.0)) throw UsageError("config: eval.tol must be nonnegative");
  if (bench.repeats < 1) throw UsageError("config: bench.repeats must be at least 1");
}

Json to_json(const RunConfig & c)
{
  return Json{
    {"seed", c.seed},
    {"workers", c.workers},
    {"record_timing", c.record_timing},
    {"paths", to_json(c.paths)},
    {"limits", ingest::to_json(c.limits)},
    {"ingest", to_json(c.ingest)},
    {"train", train_json(c.train)},
    {"scp", planner::to_json(c.scp)},
    {"plan", to_json(c.plan)},
    {"beam", to_json(c.beam)},
    {"mdp", mdp_json(c.mdp)},
    {"eval", to_json(c.eval)},
    {"bench", to_json(c.bench)},
  };
}

RunConfig run_config_from_json(const Json & j)
{
  RunConfig c;
  const Json canonical = to_json(c);
  try {
    check_keys(j, canonical, "");
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    c.record_timing = j.value("record_timing", c.record_timing);

    if (j.contains("paths")) {
      const auto & p = j.at("paths");
      check_keys(p, canonical.at("paths"), "paths");
      c.paths.out = p.value("out", c.paths.out);
      read_opt(p, "tracks", c.paths.tracks);
      read_opt(p, "meta", c.paths.meta);
      read_opt(p, "transitions", c.paths.transitions);
      read_opt(p, "scenarios", c.paths.scenarios);
      read_opt(p, "model", c.paths.model);
    }
    if (j.contains("limits")) {
      check_keys(j.at("limits"), canonical.at("limits"), "limits");
      c.limits = ingest::limits_from_json(j.at("limits"), c.limits);
    }
    if (j.contains("ingest")) {
      const auto & s = j.at("ingest");
      check_keys(s, canonical.at("ingest"), "ingest");
      read_opt(s, "synth", c.ingest.synth);
      c.ingest.n = s.value("n", c.ingest.n);
      c.ingest.steps = s.value("steps", c.ingest.steps);
      c.ingest.kind = s.value("kind", c.ingest.kind);
      c.ingest.highway_auto_direction = s.value("highway_auto_direction", c.ingest.highway_auto_direction);
      c.ingest.goal_tol = s.value("goal_tol", c.ingest.goal_tol);
      c.ingest.split = s.value("split", c.ingest.split);
      c.ingest.ttc_cap = s.value("ttc_cap", c.ingest.ttc_cap);
    }
    if (j.contains("train")) {
      const auto & s = j.at("train");
      check_keys(s, canonical.at("train"), "train");
      c.train.variant = s.value("variant", c.train.variant);
      c.train.convexity_pairs = s.value("convexity_pairs", c.train.convexity_pairs);
      Json rest = s;
      rest.erase("variant");
      rest.erase("convexity_pairs");
      c.train.config = icl::train_config_from_json(rest);
    }
    if (j.contains("scp")) {
      check_keys(j.at("scp"), canonical.at("scp"), "scp");
      c.scp = planner::scp_config_from_json(j.at("scp"), c.scp);
    }
    if (j.contains("plan")) {
      const auto & s = j.at("plan");
      check_keys(s, canonical.at("plan"), "plan");
      c.plan.objective = s.value("objective", c.plan.objective);
      read_opt(s, "horizon", c.plan.horizon);
      c.plan.soft = s.value("soft", c.plan.soft);
      c.plan.time_soft_weight = s.value("time_soft_weight", c.plan.time_soft_weight);
      read_opt(s, "limit", c.plan.limit);
    }
    if (j.contains("beam")) {
      const auto & s = j.at("beam");
      check_keys(s, canonical.at("beam"), "beam");
      c.beam.config.width = s.value("width", c.beam.config.width);
      c.beam.config.depth = s.value("depth", c.beam.config.depth);
      c.beam.config.goal_radius = s.value("goal_radius", c.beam.config.goal_radius);
      c.beam.exhaustive = s.value("exhaustive", c.beam.exhaustive);
    }
    if (j.contains("mdp")) {
      const auto & s = j.at("mdp");
      check_keys(s, canonical.at("mdp"), "mdp");
      auto & q = c.mdp;
      q.learning_rate = s.value("learning_rate", q.learning_rate);
      q.gamma = s.value("gamma", q.gamma);
      q.exploration = s.value("exploration", q.exploration);
      q.episodes = s.value("episodes", q.episodes);
      q.max_steps = s.value("max_steps", q.max_steps);
      q.goal_radius = s.value("goal_radius", q.goal_radius);
      if (s.contains("progress")) {
        const auto name = s.at("progress").get<std::string>();
        if (name == "delta") {
          q.reward = baselines::RewardParams::beam();
        } else if (name == "absolute") {
          q.reward = baselines::RewardParams::mdp();
        } else {
          throw UsageError("config: mdp.progress must be 'delta' or 'absolute'");
        }
      }
      if (s.contains("grid")) {
        check_keys(s.at("grid"), canonical.at("mdp").at("grid"), "mdp.grid");
        q.grid = baselines::grid_spec_from_json(s.at("grid"));
      }
    }
    if (j.contains("eval")) {
      const auto & s = j.at("eval");
      check_keys(s, canonical.at("eval"), "eval");
      c.eval.dataset = s.value("dataset", c.eval.dataset);
      c.eval.results = s.value("results", c.eval.results);
      c.eval.soft = s.value("soft", c.eval.soft);
      c.eval.check.tol = s.value("tol", c.eval.check.tol);
      read_opt(s, "epsilon", c.eval.check.epsilon);
      c.eval.check.ttc_cap = s.value("ttc_cap", c.eval.check.ttc_cap);
      read_opt(s, "speed_change_bound", c.eval.bounds.speed_change);
      read_opt(s, "accel_change_bound", c.eval.bounds.accel_change);
    }
    if (j.contains("bench")) {
      const auto & s = j.at("bench");
      check_keys(s, canonical.at("bench"), "bench");
      c.bench.horizons = s.value("horizons", c.bench.horizons);
      c.bench.depths = s.value("depths", c.bench.depths);
      c.bench.repeats = s.value("repeats", c.bench.repeats);
    }
  } catch (const nlohmann::json::exception & e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const core::InvalidInput & e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error & e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  return run_config_from_json(j);
}

std::string config_hash(const RunConfig & config)
{
  return sha256_hex(sorted(to_json(config)).dump());
}

}  // namespace scplan::cli
