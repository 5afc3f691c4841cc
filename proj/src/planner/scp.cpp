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

#include "scplan/planner/scp.hpp"

#include "scplan/core/constraints.hpp"
#include "scplan/ingest/features.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace scplan::planner
{

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_soft_objective(const Objective & objective)
{
  return objective.kind == ObjectiveKind::MaxSoft || objective.kind == ObjectiveKind::TimeSoftWeighted;
}

PlanResult rejected(const core::Scenario & scenario, const Objective & objective, std::string method)
{
  PlanResult r;
  r.scenario_id = scenario.id;
  r.objective = objective;
  r.method = std::move(method);
  const auto cls = core::classify_scenario(scenario);
  r.status = cls == core::ScenarioClass::BadStart ? PlanStatus::BadStart : PlanStatus::BadEnd;
  r.note = "scenario rejected before solving: " + std::string(core::to_string(cls));
  return r;
}

/// Pinned start values the subproblem cannot repair.
std::string pinned_start_problem(const core::Scenario & scenario, const ScpConfig & config)
{
  const auto & s = scenario.ego_init;
  const auto & lim = scenario.limits;
  if (s.velocity().norm() > lim.v_max + config.postcheck_tol) return "initial speed above the limit";
  if (config.pin_initial_accel && s.acceleration().norm() > lim.a_max + config.postcheck_tol) {
    return "initial acceleration above the limit";
  }
  return {};
}

SolverOptions solver_options(const ScpConfig & config)
{
  SolverOptions o;
  o.tol = config.solver_tol;
  o.max_iters = config.max_solver_iters;
  return o;
}

}  // namespace

void ScpConfig::validate() const
{
  if (scp_iterations < 1) throw core::InvalidInput("scp_iterations must be at least 1");
  if (t_min < 1 || t_max < t_min) throw core::InvalidInput("horizon range must satisfy 1 <= t_min <= t_max");
  if (!(norm_floor >= 0.0) || !std::isfinite(norm_floor)) throw core::InvalidInput("norm_floor must be >= 0");
  if (!(solver_tol > 0.0)) throw core::InvalidInput("solver_tol must be positive");
  if (max_solver_iters < 1) throw core::InvalidInput("max_solver_iters must be at least 1");
  if (!(postcheck_tol >= 0.0) || !std::isfinite(postcheck_tol)) throw core::InvalidInput("postcheck_tol must be >= 0");
  if (!(ttc_cap > 0.0)) throw core::InvalidInput("ttc_cap must be positive");
}

std::string_view to_string(PlanStatus status)
{
  switch (status) {
    case PlanStatus::Feasible:
      return "feasible";
    case PlanStatus::Infeasible:
      return "infeasible";
    case PlanStatus::BadStart:
      return "bad_start";
    case PlanStatus::BadEnd:
      return "bad_end";
  }
  return "infeasible";
}

PlanStatus plan_status_from_string(std::string_view name)
{
  for (auto s : {PlanStatus::Feasible, PlanStatus::Infeasible, PlanStatus::BadStart, PlanStatus::BadEnd}) {
    if (to_string(s) == name) return s;
  }
  throw core::InvalidInput("unknown plan status: " + std::string(name));
}

std::vector<core::ViolationRecord> postcheck(
  const core::Trajectory & traj, const core::Scenario & scenario, const icl::PhiModel * phi, double tol,
  double ttc_cap)
{
  auto records = core::check_hard_constraints(traj, scenario, tol);
  if (phi == nullptr) return records;
  const double eps = scenario.limits.epsilon;
  for (std::size_t t = 0; t < traj.horizon(); ++t) {
    const auto ctx = ingest::scenario_context(scenario, traj[t], traj[t + 1], t, traj.horizon(), ttc_cap);
    const double g = icl::phi_eval(*phi, traj[t], traj[t + 1], ctx) - eps;
    if (!std::isfinite(g) || g > tol) records.push_back({core::ConstraintId::C7, t, g});
  }
  return records;
}

PlanResult probe_horizon(
  const core::Scenario & scenario, const Objective & objective, std::size_t horizon, const ScpConfig & config,
  const icl::PhiModel * phi, AvoidanceMode mode)
{
  const auto start = Clock::now();
  PlanResult out;
  out.scenario_id = scenario.id;
  out.objective = objective;
  out.planned_steps = horizon;
  out.method = mode == AvoidanceMode::HalfPlane ? "half_plane" : "scp";

  if (const auto why = pinned_start_problem(scenario, config); !why.empty()) {
    out.note = why;
    out.compute_time = seconds_since(start);
    return out;
  }

  const bool network = phi != nullptr && phi->variant() != icl::PhiVariant::Quadratic;
  const std::size_t rounds = mode == AvoidanceMode::Linearized ? config.scp_iterations : 1;
  const auto sopts = solver_options(config);
  std::optional<core::Trajectory> ref;
  for (std::size_t round = 0; round < rounds; ++round) {
    AssemblyOptions aopts;
    aopts.norm_floor = config.norm_floor;
    aopts.pin_initial_accel = config.pin_initial_accel;
    aopts.ttc_cap = config.ttc_cap;
    aopts.avoidance = mode;
    // The first linearized round has nothing to linearize around: it drops
    // avoidance, and a network cost enters only once a reference exists.
    const icl::PhiModel * round_phi = phi;
    Objective round_objective = objective;
    if (mode == AvoidanceMode::Linearized && !ref) {
      aopts.avoidance = AvoidanceMode::None;
      if (network) {
        round_phi = nullptr;
        if (is_soft_objective(objective)) round_objective = Objective{ObjectiveKind::MinTime};
      }
    }
    const auto problem =
      assemble_problem(scenario, round_objective, horizon, ref ? &*ref : nullptr, round_phi, aopts);
    const auto res = solve_subproblem(problem, sopts);
    if (res.status != SolveStatus::Optimal) {
      out.note = "round " + std::to_string(round + 1) + " subproblem " +
                 (res.status == SolveStatus::Infeasible ? "infeasible" : "hit the iteration limit") +
                 (res.note.empty() ? "" : ": " + res.note);
      out.compute_time = seconds_since(start);
      return out;
    }
    out.scp_history.push_back(res.objective);
    ref = extract_trajectory(res.x, horizon, scenario.limits.dt);
  }

  out.violations_postcheck = postcheck(*ref, scenario, phi, config.postcheck_tol, config.ttc_cap);
  if (out.violations_postcheck.empty()) {
    out.status = PlanStatus::Feasible;
    out.objective_value = objective_functional(objective, *ref, scenario, phi);
    out.trajectory = std::move(ref);
  } else {
    out.note = "solution failed the post-check";
  }
  out.compute_time = seconds_since(start);
  return out;
}

PlanResult plan_scp(
  const core::Scenario & scenario, const Objective & objective, std::size_t horizon, const ScpConfig & config,
  const icl::PhiModel * phi)
{
  scenario.validate();
  objective.validate();
  config.validate();
  if (objective.kind == ObjectiveKind::MinTime) {
    throw core::InvalidInput("min_time is a horizon search; use plan_min_time");
  }
  if (horizon < 1) throw core::InvalidInput("horizon must be at least 1");
  if (core::classify_scenario(scenario) != core::ScenarioClass::Candidate) {
    return rejected(scenario, objective, "scp");
  }
  return probe_horizon(scenario, objective, horizon, config, phi);
}

PlanResult plan_min_time(const core::Scenario & scenario, const ScpConfig & config, const icl::PhiModel * phi)
{
  scenario.validate();
  config.validate();
  const Objective objective{ObjectiveKind::MinTime};
  if (core::classify_scenario(scenario) != core::ScenarioClass::Candidate) {
    return rejected(scenario, objective, "scp_min_time");
  }
  const auto start = Clock::now();
  auto out = binary_search_horizon(config.t_min, config.t_max, [&](std::size_t t) {
    return probe_horizon(scenario, objective, t, config, phi);
  });
  out.method = "scp_min_time";
  if (out.feasible()) out.objective_value = out.trajectory->duration();
  out.compute_time = seconds_since(start);
  return out;
}

PlanResult plan_highd(
  const core::Scenario & scenario, const Objective & objective, std::optional<std::size_t> horizon,
  const ScpConfig & config, const icl::PhiModel * phi)
{
  scenario.validate();
  objective.validate();
  config.validate();
  if (!core::is_highway(scenario.kind)) throw core::InvalidInput("plan_highd needs a highway scenario");
  if (phi != nullptr && phi->variant() != icl::PhiVariant::Quadratic) {
    throw icl::UnsupportedVariant("the highway planner embeds only the quadratic cost");
  }
  if (horizon && *horizon < 1) throw core::InvalidInput("horizon must be at least 1");
  if (core::classify_scenario(scenario) != core::ScenarioClass::Candidate) {
    return rejected(scenario, objective, "highd");
  }
  const auto start = Clock::now();
  PlanResult out;
  if (horizon && objective.kind != ObjectiveKind::MinTime) {
    out = probe_horizon(scenario, objective, *horizon, config, phi, AvoidanceMode::HalfPlane);
  } else {
    out = binary_search_horizon(config.t_min, config.t_max, [&](std::size_t t) {
      return probe_horizon(scenario, objective, t, config, phi, AvoidanceMode::HalfPlane);
    });
    if (out.feasible() && objective.kind == ObjectiveKind::MinTime) {
      out.objective_value = out.trajectory->duration();
    }
  }
  out.method = "highd";
  out.compute_time = seconds_since(start);
  return out;
}

PlanResult plan_time_soft(
  const core::Scenario & scenario, const ScpConfig & config, const icl::PhiModel & phi, double weight)
{
  scenario.validate();
  config.validate();
  const auto objective = Objective::time_soft(weight);
  if (phi.variant() != icl::PhiVariant::Quadratic) {
    throw icl::UnsupportedVariant("time/soft trade-off needs the quadratic cost");
  }
  if (core::classify_scenario(scenario) != core::ScenarioClass::Candidate) {
    return rejected(scenario, objective, "time_soft");
  }
  const auto start = Clock::now();
  std::vector<std::pair<std::size_t, PlanResult>> visited;
  auto searched = binary_search_horizon(
    config.t_min, config.t_max,
    [&](std::size_t t) { return probe_horizon(scenario, objective, t, config, &phi); }, &visited);

  std::optional<PlanResult> best;
  double best_score = std::numeric_limits<double>::infinity();
  for (auto & [t, r] : visited) {
    if (!r.feasible()) continue;
    const double score =
      r.trajectory->duration() + weight * soft_cost(*r.trajectory, scenario, phi, config.ttc_cap);
    if (score < best_score || (score == best_score && best && t < best->planned_steps)) {
      best_score = score;
      best = std::move(r);
    }
  }
  auto probes = searched.probes;
  PlanResult out = best ? std::move(*best) : std::move(searched);
  if (best) out.objective_value = best_score;
  out.probes = std::move(probes);
  out.method = "time_soft";
  out.compute_time = seconds_since(start);
  return out;
}

}  // namespace scplan::planner
