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

#include "scplan/ingest/io.hpp"

#include <string>

namespace scplan::ingest
{

Json to_json(const core::State & s)
{
  return Json::array({s.x, s.y, s.vx, s.vy, s.ax, s.ay});
}

core::State state_from_json(const Json & j)
{
  if (!j.is_array() || j.size() != 6) throw core::InvalidInput("state: expected 6 numbers");
  return core::State{
    j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
    j[3].get<double>(), j[4].get<double>(), j[5].get<double>()};
}

Json to_json(const core::Trajectory & traj)
{
  Json states = Json::array();
  for (const auto & s : traj.states()) states.push_back(to_json(s));
  return Json{{"dt", traj.dt()}, {"states", std::move(states)}};
}

core::Trajectory trajectory_from_json(const Json & j)
{
  std::vector<core::State> states;
  for (const auto & s : j.at("states")) states.push_back(state_from_json(s));
  return core::Trajectory(std::move(states), j.at("dt").get<double>());
}

Json to_json(const core::Limits & l)
{
  return Json{
    {"v_max", l.v_max}, {"a_max", l.a_max}, {"d_min", l.d_min}, {"dt", l.dt}, {"epsilon", l.epsilon}};
}

core::Limits limits_from_json(const Json & j, const core::Limits & defaults)
{
  core::Limits l = defaults;
  l.v_max = j.value("v_max", l.v_max);
  l.a_max = j.value("a_max", l.a_max);
  l.d_min = j.value("d_min", l.d_min);
  l.dt = j.value("dt", l.dt);
  l.epsilon = j.value("epsilon", l.epsilon);
  l.validate();
  return l;
}

Json to_json(const core::Scenario & s)
{
  Json j{
    {"id", s.id},
    {"kind", std::string(core::to_string(s.kind))},
    {"ego_init", to_json(s.ego_init)},
    {"goal", Json::array({s.goal.x(), s.goal.y()})},
    {"goal_tol", s.goal_tol},
    {"limits", to_json(s.limits)},
    {"lead", to_json(s.lead)},
  };
  if (s.reference) j["reference"] = to_json(*s.reference);
  return j;
}

core::Scenario scenario_from_json(const Json & j)
{
  const auto & goal = j.at("goal");
  std::optional<core::Trajectory> reference;
  if (j.contains("reference")) reference = trajectory_from_json(j.at("reference"));
  core::Scenario s{
    j.at("id").get<std::string>(),
    state_from_json(j.at("ego_init")),
    core::Vec2(goal.at(0).get<double>(), goal.at(1).get<double>()),
    j.value("goal_tol", 0.0),
    trajectory_from_json(j.at("lead")),
    limits_from_json(j.at("limits")),
    core::scenario_kind_from_string(j.at("kind").get<std::string>()),
    std::move(reference)};
  s.validate();
  return s;
}

std::string transition_line(const Transition & t)
{
  Json j{
    {"track_id", t.track_id},
    {"frame", t.frame},
    {"s_t", to_json(t.s_t)},
    {"s_next", to_json(t.s_next)},
    {"features", t.features},
    {"split", std::string(to_string(t.split))},
  };
  return j.dump();
}

Transition transition_from_json(const Json & j)
{
  Transition t;
  t.track_id = j.at("track_id").get<std::int64_t>();
  t.frame = j.at("frame").get<std::int64_t>();
  t.s_t = state_from_json(j.at("s_t"));
  t.s_next = state_from_json(j.at("s_next"));
  const auto & f = j.at("features");
  if (f.size() != kFeatureDim) throw core::InvalidInput("transition: expected 23 features");
  for (std::size_t i = 0; i < kFeatureDim; ++i) t.features[i] = f[i].get<double>();
  t.split = split_from_string(j.at("split").get<std::string>());
  return t;
}

std::string write_transitions(const TransitionDataset & ds)
{
  std::string out;
  for (const auto & t : ds.transitions) {
    out += transition_line(t);
    out += '\n';
  }
  return out;
}

TransitionDataset read_transitions(std::istream & in)
{
  TransitionDataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      ds.transitions.push_back(transition_from_json(Json::parse(line)));
    } catch (const Json::exception & e) {
      throw core::InvalidInput(
        "transitions: malformed line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return ds;
}

}  // namespace scplan::ingest
