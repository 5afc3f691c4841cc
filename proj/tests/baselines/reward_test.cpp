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

#include "planner/fixtures.hpp"
#include "scplan/baselines/reward.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace scplan::baselines
{
namespace
{

using planner::testing::at_rest;
using planner::testing::open_road;

/// Cost with a constant value, so exp(-phi) equals `score` everywhere.
icl::PhiModel constant_phi(double score)
{
  auto phi = icl::make_quadratic(icl::MatrixXd::Zero(10, 10), icl::VectorXd::Zero(10), -std::log(score));
  phi.dt = 0.4;
  return phi;
}

core::State moved(const core::State & s, const core::Vec2 & u, double dt)
{
  return core::step_kinematics(s, u, dt);
}

TEST(Actions, GridOfNine)
{
  EXPECT_EQ(action(0), core::Vec2(0.0, 0.0));
  EXPECT_EQ(action(1), core::Vec2(2.0, 0.0));
  EXPECT_EQ(action(8), core::Vec2(-2.0, -2.0));
  std::set<std::pair<double, double>> seen;
  for (std::size_t k = 0; k < kNumActions; ++k) {
    const auto a = action(k);
    EXPECT_LE(a.cwiseAbs().maxCoeff(), 2.0);
    EXPECT_TRUE(a.x() == -2.0 || a.x() == 0.0 || a.x() == 2.0);
    EXPECT_TRUE(a.y() == -2.0 || a.y() == 0.0 || a.y() == 2.0);
    seen.emplace(a.x(), a.y());
  }
  EXPECT_EQ(seen.size(), kNumActions);
  EXPECT_THROW(action(9), core::InvalidInput);
}

TEST(Reward, CompliantStepEarnsBonusMinusTime)
{
  const auto sc = open_road(core::State::make({0.0, 0.0}, {5.0, 0.0}, {0.0, 0.0}), {50.0, 0.0});
  const auto next = moved(sc.ego_init, {1.0, 0.0}, 0.4);
  const auto phi = constant_phi(0.9);
  const auto p = RewardParams::beam();
  const double progress = (50.0 - (50.0 - next.x)) * 20.0;
  const auto terms = reward_terms(sc.ego_init, next, 0, 10, sc, &phi, p);
  EXPECT_NEAR(terms.progress, progress, 1e-12);
  EXPECT_EQ(terms.soft, 10.0);
  EXPECT_EQ(terms.hard, 0.0);
  EXPECT_NEAR(terms.total(), progress + 10.0 - 1.0, 1e-12);
}

TEST(Reward, SpeedViolationCostsAThousand)
{
  const auto sc = open_road(core::State::make({0.0, 0.0}, {13.8, 0.0}, {0.0, 0.0}), {500.0, 0.0});
  const auto next = moved(sc.ego_init, {2.0, 0.0}, 0.4);
  ASSERT_GT(next.velocity().norm(), sc.limits.v_max);
  const auto terms = reward_terms(sc.ego_init, next, 0, 10, sc, nullptr, RewardParams::beam());
  EXPECT_EQ(terms.hard_violations, 1u);
  EXPECT_EQ(terms.hard, -1000.0);
}

TEST(Reward, AccelerationAndProximityViolations)
{
  auto sc = open_road(at_rest(0.0, 0.0), {100.0, 0.0});
  sc.lead = planner::testing::parked_lead({3.0, 0.0}, 0.4);
  const auto next = moved(sc.ego_init, {6.0, 0.0}, 0.4);
  const auto terms = reward_terms(sc.ego_init, next, 0, 10, sc, nullptr, RewardParams::beam());
  EXPECT_EQ(terms.hard_violations, 2u);
  EXPECT_EQ(terms.hard, -2000.0);
}

TEST(Reward, SoftBands)
{
  const auto sc = open_road(at_rest(0.0, 0.0), {30.0, 0.0});
  const auto next = moved(sc.ego_init, {2.0, 0.0}, 0.4);
  const auto p = RewardParams::beam();
  const double base = reward(sc.ego_init, next, 0, 10, sc, nullptr, p);
  const std::vector<std::pair<double, double>> bands{{0.4, 0.0}, {0.3, 0.0}, {0.5, 10.0}, {0.29, -50.0}, {0.99, 10.0}};
  for (const auto & [score, expected] : bands) {
    const auto phi = constant_phi(score);
    EXPECT_NEAR(reward(sc.ego_init, next, 0, 10, sc, &phi, p) - base, expected, 1e-12) << score;
  }
}

TEST(Reward, AbsoluteProgress)
{
  const auto sc = open_road(at_rest(0.0, 0.0), {30.0, 40.0});
  const auto next = moved(sc.ego_init, {0.0, 0.0}, 0.4);
  const auto terms = reward_terms(sc.ego_init, next, 0, 10, sc, nullptr, RewardParams::mdp());
  EXPECT_NEAR(terms.progress, (100.0 - 50.0) * 0.1, 1e-12);
  EXPECT_NEAR(terms.total(), 5.0 - 1.0, 1e-12);
}

TEST(Reward, ParamsValidate)
{
  auto p = RewardParams::beam();
  p.hard_penalty = 1.0;
  EXPECT_THROW(p.validate(), core::InvalidInput);
  p = RewardParams::beam();
  p.soft_bonus = -1.0;
  EXPECT_THROW(p.validate(), core::InvalidInput);
}

}  // namespace
}  // namespace scplan::baselines
