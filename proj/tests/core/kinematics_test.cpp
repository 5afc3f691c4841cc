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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace scplan::core
{
namespace
{
constexpr double kEpsilon = 1e-12;

TEST(StepKinematics, ZeroAcceleration)
{
  const State s{0.0, 0.0, 2.0, 0.0, 0.0, 0.0};
  const auto next = step_kinematics(s, Vec2(0.0, 0.0), 0.1);
  EXPECT_NEAR(next.x, 0.2, kEpsilon);
  EXPECT_NEAR(next.vx, 2.0, kEpsilon);
}

TEST(StepKinematics, PositionLagsVelocity)
{
  const State s{};
  const auto next = step_kinematics(s, Vec2(1.0, 0.0), 0.1);
  EXPECT_NEAR(next.x, 0.0, kEpsilon);
  EXPECT_NEAR(next.vx, 0.1, kEpsilon);
  EXPECT_NEAR(next.vy, 0.0, kEpsilon);
  EXPECT_EQ(next.ax, 1.0);
}

TEST(StepKinematics, HandEvaluatedStep)
{
  const State s{1.0, 1.0, 2.0, -1.0, 7.0, -3.0};
  const auto next = step_kinematics(s, Vec2(0.5, 0.5), 0.4);
  EXPECT_NEAR(next.x, 1.8, kEpsilon);
  EXPECT_NEAR(next.y, 0.6, kEpsilon);
  EXPECT_NEAR(next.vx, 2.2, kEpsilon);
  EXPECT_NEAR(next.vy, -0.8, kEpsilon);
  EXPECT_EQ(next.ax, 0.5);
  EXPECT_EQ(next.ay, 0.5);
}

TEST(StepKinematics, RejectsNonFinite)
{
  State s{};
  s.vx = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(step_kinematics(s, Vec2(0.0, 0.0), 0.1), InvalidInput);
  EXPECT_THROW(
    step_kinematics(State{}, Vec2(std::numeric_limits<double>::infinity(), 0.0), 0.1),
    InvalidInput);
  EXPECT_THROW(step_kinematics(State{}, Vec2(0.0, 0.0), 0.0), InvalidInput);
}

TEST(StepKinematics, AffineCombinationProperty)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const State s1{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const State s2{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const Vec2 u1(u(rng), u(rng));
    const Vec2 u2(u(rng), u(rng));
    const double alpha = u(rng);
    const double beta = 1.0 - alpha;
    const State mix{
      alpha * s1.x + beta * s2.x, alpha * s1.y + beta * s2.y, alpha * s1.vx + beta * s2.vx,
      alpha * s1.vy + beta * s2.vy, 0.0, 0.0};
    const auto lhs = step_kinematics(mix, alpha * u1 + beta * u2, 0.4);
    const auto r1 = step_kinematics(s1, u1, 0.4);
    const auto r2 = step_kinematics(s2, u2, 0.4);
    EXPECT_NEAR(lhs.x, alpha * r1.x + beta * r2.x, 1e-9);
    EXPECT_NEAR(lhs.y, alpha * r1.y + beta * r2.y, 1e-9);
    EXPECT_NEAR(lhs.vx, alpha * r1.vx + beta * r2.vx, 1e-9);
    EXPECT_NEAR(lhs.vy, alpha * r1.vy + beta * r2.vy, 1e-9);
  }
}

TEST(Rollout, StoresAppliedAccelerationOnSourceState)
{
  const State init{0.0, 0.0, 1.0, 0.0, 9.0, 9.0};
  const auto traj = rollout(init, {Vec2(1.0, 0.0), Vec2(0.0, -1.0)}, 0.5);
  ASSERT_EQ(traj.size(), 3u);
  EXPECT_EQ(traj[0].ax, 1.0);
  EXPECT_EQ(traj[1].ay, -1.0);
  EXPECT_NEAR(traj[1].x, 0.5, kEpsilon);
  EXPECT_NEAR(traj[1].vx, 1.5, kEpsilon);
  EXPECT_NEAR(traj[2].x, 1.25, kEpsilon);
  EXPECT_NEAR(traj[2].vy, -0.5, kEpsilon);
}

TEST(Rollout, EmptyAccelsGivesSingleState)
{
  const auto traj = rollout(State{}, {}, 0.1);
  EXPECT_EQ(traj.size(), 1u);
  EXPECT_EQ(traj.horizon(), 0u);
}

}  // namespace
}  // namespace scplan::core
