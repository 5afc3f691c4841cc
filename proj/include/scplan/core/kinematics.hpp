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

#ifndef SCPLAN__CORE__KINEMATICS_HPP_
#define SCPLAN__CORE__KINEMATICS_HPP_

#include "scplan/core/types.hpp"

#include <vector>

namespace scplan::core
{

/// One explicit-Euler step of the point-mass model. Position advances with the
/// current velocity, velocity with the applied acceleration. The returned
/// state carries `accel` in its acceleration field.
State step_kinematics(const State & s, const Vec2 & accel, double dt);

/// Rolls `accels` forward from `init`. State t holds the acceleration applied
/// over [t, t+1], so the result satisfies v_{t+1} = v_t + a_t dt exactly.
Trajectory rollout(const State & init, const std::vector<Vec2> & accels, double dt);

}  // namespace scplan::core

#endif  // SCPLAN__CORE__KINEMATICS_HPP_
