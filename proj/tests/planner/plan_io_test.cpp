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

#include "planner/fixtures.hpp"

#include <gtest/gtest.h>

namespace scplan::planner
{
namespace
{

TEST(PlanIo, FeasibleResultRoundTripsExactly)
{
  const auto s = testing::open_road(testing::at_rest(0, 0), {17.3, -4.1});
  const auto r = plan_scp(s, {ObjectiveKind::MinJerk}, 15, {});
  ASSERT_TRUE(r.feasible()) << r.note;
  const auto j = to_json(r, s.limits.dt);
  EXPECT_TRUE(j.at("compute_time_s").is_null());
  const auto back = plan_result_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.status, r.status);
  EXPECT_EQ(back.scenario_id, "open");
  EXPECT_EQ(back.objective, r.objective);
  EXPECT_EQ(back.objective_value, r.objective_value);
  EXPECT_EQ(back.scp_history, r.scp_history);
  ASSERT_TRUE(back.trajectory.has_value());
  EXPECT_EQ(back.trajectory->states(), r.trajectory->states());
  EXPECT_EQ(back.trajectory->dt(), s.limits.dt);
  EXPECT_EQ(to_json(back, s.limits.dt).dump(), j.dump());
}

TEST(PlanIo, TimingOnlyWhenAsked)
{
  PlanResult r;
  r.compute_time = 0.25;
  r.violations_postcheck.push_back({core::ConstraintId::C6, 4, 0.5});
  r.probes = {{50, false}, {75, false}};
  const auto j = to_json(r, 0.1, true);
  EXPECT_EQ(j.at("compute_time_s").get<double>(), 0.25);
  EXPECT_TRUE(j.at("trajectory").is_null());
  const auto back = plan_result_from_json(j);
  EXPECT_EQ(back.compute_time, 0.25);
  ASSERT_EQ(back.violations_postcheck.size(), 1u);
  EXPECT_EQ(back.violations_postcheck[0].constraint, core::ConstraintId::C6);
  EXPECT_EQ(back.probes, r.probes);
}

TEST(PlanIo, RejectsInconsistentFiles)
{
  PlanResult r;
  auto j = to_json(r, 0.1);
  j["status"] = "feasible";
  EXPECT_THROW(plan_result_from_json(j), core::InvalidInput);
  j["status"] = "sometimes";
  EXPECT_THROW(plan_result_from_json(j), core::InvalidInput);
}

TEST(PlanIo, ConfigRoundTrip)
{
  ScpConfig c;
  c.t_max = 42;
  c.norm_floor = 1e-5;
  const auto back = scp_config_from_json(to_json(c));
  EXPECT_EQ(back.t_max, 42u);
  EXPECT_EQ(back.norm_floor, 1e-5);
  EXPECT_THROW(scp_config_from_json(Json{{"t_min", 0}}), core::InvalidInput);
}

}  // namespace
}  // namespace scplan::planner
