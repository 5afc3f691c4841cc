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

#include "scplan/core/kinematics.hpp"

#include <cmath>

namespace scplan::core
{

State step_kinematics(const State & s, const Vec2 & accel, double dt)
{
  if (!s.finite() || !std::isfinite(accel.x()) || !std::isfinite(accel.y())) {
    throw InvalidInput("step_kinematics: non-finite input");
  }
  if (!std::isfinite(dt) || dt <= 0.0) throw InvalidInput("step_kinematics: dt must be positive");

  State next;
  next.x = s.x + s.vx * dt;
  next.y = s.y + s.vy * dt;
  next.vx = s.vx + accel.x() * dt;
  next.vy = s.vy + accel.y() * dt;
  next.ax = accel.x();
  next.ay = accel.y();
  return next;
}

Trajectory rollout(const State & init, const std::vector<Vec2> & accels, double dt)
{
  std::vector<State> states;
  states.reserve(accels.size() + 1);
  states.push_back(init);
  for (const auto & u : accels) {
    states.back().ax = u.x();
    states.back().ay = u.y();
    states.push_back(step_kinematics(states.back(), u, dt));
  }
  return Trajectory(std::move(states), dt);
}

}  // namespace scplan::core
