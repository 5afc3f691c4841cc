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

#include "scplan/planner/plan_io.hpp"

#include <fstream>

namespace scplan::planner
{

Json to_json(const ScpConfig & c)
{
  return Json{
    {"scp_iterations", c.scp_iterations},
    {"norm_floor", c.norm_floor},
    {"t_min", c.t_min},
    {"t_max", c.t_max},
    {"solver_tol", c.solver_tol},
    {"max_solver_iters", c.max_solver_iters},
    {"pin_initial_accel", c.pin_initial_accel},
    {"postcheck_tol", c.postcheck_tol},
    {"ttc_cap", c.ttc_cap},
  };
}

ScpConfig scp_config_from_json(const Json & j, const ScpConfig & defaults)
{
  ScpConfig c = defaults;
  c.scp_iterations = j.value("scp_iterations", c.scp_iterations);
  c.norm_floor = j.value("norm_floor", c.norm_floor);
  c.t_min = j.value("t_min", c.t_min);
  c.t_max = j.value("t_max", c.t_max);
  c.solver_tol = j.value("solver_tol", c.solver_tol);
  c.max_solver_iters = j.value("max_solver_iters", c.max_solver_iters);
  c.pin_initial_accel = j.value("pin_initial_accel", c.pin_initial_accel);
  c.postcheck_tol = j.value("postcheck_tol", c.postcheck_tol);
  c.ttc_cap = j.value("ttc_cap", c.ttc_cap);
  c.validate();
  return c;
}

Json to_json(const Objective & o)
{
  Json j{{"kind", std::string(to_string(o.kind))}};
  if (o.kind == ObjectiveKind::TimeSoftWeighted) j["weight"] = o.weight;
  return j;
}

Objective objective_from_json(const Json & j)
{
  Objective o{objective_kind_from_string(j.at("kind").get<std::string>()), j.value("weight", 0.0)};
  o.validate();
  return o;
}

Json to_json(const core::ViolationRecord & v)
{
  return Json{{"constraint", std::string(core::to_string(v.constraint))}, {"step", v.step}, {"magnitude", v.magnitude}};
}

core::ViolationRecord violation_from_json(const Json & j)
{
  const auto name = j.at("constraint").get<std::string>();
  for (auto id : core::kAllConstraints) {
    if (core::to_string(id) == name) return {id, j.at("step").get<std::size_t>(), j.at("magnitude").get<double>()};
  }
  throw core::InvalidInput("unknown constraint id: " + name);
}

Json to_json(const PlanResult & r, double dt, bool with_timing)
{
  const auto rows = [](const std::optional<core::Trajectory> & t) {
    if (!t) return Json(nullptr);
    Json a = Json::array();
    for (const auto & s : t->states()) a.push_back(s.to_array());
    return a;
  };
  Json violations = Json::array();
  for (const auto & v : r.violations_postcheck) violations.push_back(to_json(v));
  Json probes = Json::array();
  for (const auto & [t, ok] : r.probes) probes.push_back(Json{{"horizon", t}, {"feasible", ok}});
  return Json{
    {"scenario_id", r.scenario_id},
    {"method", r.method},
    {"status", std::string(to_string(r.status))},
    {"planned_steps", r.planned_steps},
    {"dt", dt},
    {"objective", to_json(r.objective)},
    {"objective_value", r.objective_value},
    {"compute_time_s", with_timing ? Json(r.compute_time) : Json(nullptr)},
    {"trajectory", rows(r.trajectory)},
    {"attempted_trajectory", rows(r.attempt)},
    {"scp_history", r.scp_history},
    {"violations_postcheck", std::move(violations)},
    {"probes", std::move(probes)},
    {"note", r.note},
  };
}

PlanResult plan_result_from_json(const Json & j)
{
  PlanResult r;
  r.scenario_id = j.value("scenario_id", std::string());
  r.method = j.value("method", std::string());
  r.status = plan_status_from_string(j.at("status").get<std::string>());
  r.planned_steps = j.at("planned_steps").get<std::size_t>();
  r.objective = objective_from_json(j.at("objective"));
  r.objective_value = j.at("objective_value").get<double>();
  const auto & ct = j.at("compute_time_s");
  r.compute_time = ct.is_null() ? 0.0 : ct.get<double>();
  const auto read_rows = [&](const char * key) -> std::optional<core::Trajectory> {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    std::vector<core::State> states;
    for (const auto & row : *it) states.push_back(core::State::from_array(row.get<std::array<double, 6>>()));
    if (states.empty()) throw core::InvalidInput(std::string(key) + " is empty");
    return core::Trajectory(std::move(states), j.at("dt").get<double>());
  };
  r.trajectory = read_rows("trajectory");
  r.attempt = read_rows("attempted_trajectory");
  if ((r.status == PlanStatus::Feasible) != r.trajectory.has_value()) {
    throw core::InvalidInput("plan has a trajectory iff it is feasible");
  }
  if (r.trajectory && r.attempt) throw core::InvalidInput("plan has both a trajectory and an attempt");
  if (r.trajectory && r.trajectory->horizon() != r.planned_steps) {
    throw core::InvalidInput("planned_steps disagrees with the trajectory length");
  }
  r.scp_history = j.value("scp_history", std::vector<double>{});
  for (const auto & v : j.value("violations_postcheck", Json::array())) r.violations_postcheck.push_back(violation_from_json(v));
  for (const auto & p : j.value("probes", Json::array())) {
    r.probes.emplace_back(p.at("horizon").get<std::size_t>(), p.at("feasible").get<bool>());
  }
  r.note = j.value("note", std::string());
  return r;
}

void save_plan(const PlanResult & result, double dt, const std::filesystem::path & path, bool with_timing)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(result, dt, with_timing).dump(2) << '\n';
}

PlanResult load_plan(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return plan_result_from_json(Json::parse(in));
  } catch (const Json::exception & e) {
    throw core::InvalidInput("plan file " + path.string() + ": " + e.what());
  }
}

}  // namespace scplan::planner
