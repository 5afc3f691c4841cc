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
#include "scplan/cli/svg.hpp"
#include "scplan/core/kinematics.hpp"

#include <gtest/gtest.h>

namespace scplan::cli
{
namespace
{

std::size_t count(const std::string & text, const std::string & needle)
{
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

core::Scenario crossing()
{
  using namespace planner::testing;
  auto sc = open_road(at_rest(0, 0), {40, 0});
  sc.lead = cruising_lead({20, -30}, {0, 3}, 20, sc.limits.dt);
  return sc;
}

TEST(Svg, DrawsPathsCirclesMarkersAndViolations)
{
  const auto sc = crossing();
  planner::PlanResult r;
  r.scenario_id = sc.id;
  r.status = planner::PlanStatus::Infeasible;
  r.attempt = core::rollout(sc.ego_init, std::vector<core::Vec2>(10, core::Vec2(2.0, 0.0)), sc.limits.dt);
  r.violations_postcheck.push_back({core::ConstraintId::C6, 4, 1.0});
  r.violations_postcheck.push_back({core::ConstraintId::C5, 10, 2.0});

  SvgStyle style;
  style.circle_every = 5;
  const auto svg = render_svg(sc, r, style);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  // d_min circles at steps 0, 5, 10, plus start and goal markers.
  EXPECT_EQ(count(svg, "<circle"), 5u);
  EXPECT_EQ(count(svg, "<path"), 2u);
  EXPECT_NE(svg.find("C6 step 4"), std::string::npos);
  EXPECT_EQ(count(svg, "stroke-dasharray"), 0u);
}

TEST(Svg, FallsBackToDashedReference)
{
  auto sc = crossing();
  sc.reference = core::rollout(sc.ego_init, std::vector<core::Vec2>(6, core::Vec2(1.0, 0.0)), sc.limits.dt);
  planner::PlanResult r;
  r.status = planner::PlanStatus::BadStart;
  const auto svg = render_svg(sc, r);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_EQ(count(svg, "stroke-dasharray"), 1u);
  EXPECT_NE(svg.find("bad_start"), std::string::npos);
}

TEST(Svg, StructureIsDeterministic)
{
  const auto sc = crossing();
  planner::PlanResult r;
  r.trajectory = core::rollout(sc.ego_init, std::vector<core::Vec2>(8, core::Vec2(1.0, 0.5)), sc.limits.dt);
  r.status = planner::PlanStatus::Feasible;
  EXPECT_EQ(render_svg(sc, r), render_svg(sc, r));
}

}  // namespace
}  // namespace scplan::cli
