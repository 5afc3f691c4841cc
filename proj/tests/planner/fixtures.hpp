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

#ifndef PLANNER__FIXTURES_HPP_
#define PLANNER__FIXTURES_HPP_

#include "scplan/core/kinematics.hpp"
#include "scplan/core/types.hpp"
#include "scplan/icl/phi_model.hpp"

#include <random>
#include <vector>

namespace scplan::planner::testing
{

inline core::Limits test_limits(double dt = 0.4)
{
  core::Limits lim;
  lim.dt = dt;
  return lim;
}

/// Lead parked far away so it never binds.
inline core::Trajectory parked_lead(const core::Vec2 & where, double dt)
{
  return core::Trajectory({core::State::make(where, core::Vec2::Zero(), core::Vec2::Zero())}, dt);
}

inline core::Trajectory cruising_lead(const core::Vec2 & start, const core::Vec2 & vel, std::size_t steps, double dt)
{
  return core::rollout(
    core::State::make(start, vel, core::Vec2::Zero()), std::vector<core::Vec2>(steps, core::Vec2::Zero()), dt);
}

inline core::Scenario open_road(const core::State & init, const core::Vec2 & goal, double dt = 0.4)
{
  const auto lim = test_limits(dt);
  return core::Scenario{"open", init, goal, 0.0, parked_lead({1e4, 1e4}, dt), lim,
                        core::ScenarioKind::Intersection, std::nullopt};
}

inline core::State at_rest(double x, double y)
{
  return core::State::make({x, y}, core::Vec2::Zero(), core::Vec2::Zero());
}

/// Random accelerations inside the limit, rolled out from `init`.
inline core::Trajectory random_rollout(
  const core::State & init, std::size_t horizon, double dt, double a_bound, std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> u(-a_bound, a_bound);
  std::vector<core::Vec2> accels;
  for (std::size_t t = 0; t < horizon; ++t) accels.emplace_back(u(rng), u(rng));
  return core::rollout(init, accels, dt);
}

/// Random convex quadratic cost with an identity normalizer.
inline icl::PhiModel random_quadratic_phi(std::mt19937_64 & rng, double scale, double dt)
{
  std::normal_distribution<double> n(0.0, 1.0);
  icl::MatrixXd a(10, 10);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n(rng);
  icl::VectorXd c(10);
  for (Eigen::Index i = 0; i < 10; ++i) c[i] = n(rng);
  auto phi = icl::make_quadratic(scale * a.transpose() * a, c, 0.1);
  phi.dt = dt;
  return phi;
}

}  // namespace scplan::planner::testing

#endif  // PLANNER__FIXTURES_HPP_
