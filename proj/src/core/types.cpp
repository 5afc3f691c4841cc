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

#include "scplan/core/types.hpp"

#include <cmath>
#include <utility>

namespace scplan::core
{

bool State::finite() const
{
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(vx) && std::isfinite(vy) &&
         std::isfinite(ax) && std::isfinite(ay);
}

State State::from_array(const std::array<double, 6> & v)
{
  return State{v[0], v[1], v[2], v[3], v[4], v[5]};
}

State State::make(const Vec2 & p, const Vec2 & v, const Vec2 & a)
{
  return State{p.x(), p.y(), v.x(), v.y(), a.x(), a.y()};
}

void Limits::validate() const
{
  const auto positive = [](double value) { return std::isfinite(value) && value > 0.0; };
  if (!positive(v_max)) throw InvalidInput("limits: v_max must be positive");
  if (!positive(a_max)) throw InvalidInput("limits: a_max must be positive");
  if (!positive(d_min)) throw InvalidInput("limits: d_min must be positive");
  if (!positive(dt)) throw InvalidInput("limits: dt must be positive");
  if (!positive(epsilon)) throw InvalidInput("limits: epsilon must be positive");
}

Trajectory::Trajectory(std::vector<State> states, double dt) : states_(std::move(states)), dt_(dt)
{
  if (states_.empty()) throw InvalidInput("trajectory: at least one state required");
  if (!std::isfinite(dt_) || dt_ <= 0.0) throw InvalidInput("trajectory: dt must be positive");
  for (const auto & s : states_) {
    if (!s.finite()) throw InvalidInput("trajectory: non-finite state");
  }
}

const State & Trajectory::held(std::size_t t) const
{
  return t < states_.size() ? states_[t] : states_.back();
}

std::string_view to_string(ScenarioKind kind)
{
  switch (kind) {
    case ScenarioKind::Intersection:
      return "intersection";
    case ScenarioKind::Roundabout:
      return "roundabout";
    case ScenarioKind::HighwayRightward:
      return "highway_rightward";
    case ScenarioKind::HighwayLeftward:
      return "highway_leftward";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name)
{
  for (auto kind :
       {ScenarioKind::Intersection, ScenarioKind::Roundabout, ScenarioKind::HighwayRightward,
        ScenarioKind::HighwayLeftward}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidInput("unknown scenario kind: " + std::string(name));
}

bool is_highway(ScenarioKind kind)
{
  return kind == ScenarioKind::HighwayRightward || kind == ScenarioKind::HighwayLeftward;
}

void Scenario::validate() const
{
  limits.validate();
  if (!ego_init.finite()) throw InvalidInput("scenario: non-finite ego state");
  if (!std::isfinite(goal.x()) || !std::isfinite(goal.y())) {
    throw InvalidInput("scenario: non-finite goal");
  }
  if (!std::isfinite(goal_tol) || goal_tol < 0.0) {
    throw InvalidInput("scenario: goal_tol must be nonnegative");
  }
  if (lead.dt() != limits.dt) throw InvalidInput("scenario: lead dt differs from limits dt");
}

const ConstraintInfo & constraint_info(ConstraintId id)
{
  static const std::array<ConstraintInfo, 7> table{{
    {ConstraintId::C1, Hardness::Hard, Convexity::Convex, "position dynamics"},
    {ConstraintId::C2, Hardness::Hard, Convexity::Convex, "velocity dynamics"},
    {ConstraintId::C3, Hardness::Hard, Convexity::Convex, "speed limit"},
    {ConstraintId::C4, Hardness::Hard, Convexity::Convex, "acceleration limit"},
    {ConstraintId::C5, Hardness::Hard, Convexity::Convex, "initial and goal condition"},
    {ConstraintId::C6, Hardness::Hard, Convexity::Nonconvex, "front vehicle distance"},
    {ConstraintId::C7, Hardness::Soft, Convexity::PossiblyNonconvex, "learned soft constraint"},
  }};
  return table[static_cast<std::size_t>(id) - 1];
}

std::string_view to_string(ConstraintId id)
{
  static constexpr std::array<std::string_view, 7> names{"C1", "C2", "C3", "C4",
                                                         "C5", "C6", "C7"};
  return names[static_cast<std::size_t>(id) - 1];
}

}  // namespace scplan::core
