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

#include "scplan/cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace scplan::cli
{

namespace
{

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Frame
{
  double min_x, min_y, scale, height, margin;

  double px(double x) const { return margin + (x - min_x) * scale; }
  double py(double y) const { return height - margin - (y - min_y) * scale; }
};

std::string polyline(const Frame & f, const core::Trajectory & traj, const char * stroke, bool dashed)
{
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\"";
  if (dashed) os << " stroke-dasharray=\"6 4\"";
  os << " points=\"";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (i) os << ' ';
    os << num(f.px(traj[i].x)) << ',' << num(f.py(traj[i].y));
  }
  os << "\"/>\n";
  return os.str();
}

}  // namespace

std::string render_svg(const core::Scenario & scenario, const planner::PlanResult & result, const SvgStyle & style)
{
  const core::Trajectory * ego = nullptr;
  bool dashed = false;
  if (result.trajectory) {
    ego = &*result.trajectory;
  } else if (result.attempt) {
    ego = &*result.attempt;
  } else if (scenario.reference) {
    ego = &*scenario.reference;
    dashed = true;
  }

  const double d_min = scenario.limits.d_min;
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  const auto grow = [&](double x, double y, double pad) {
    lo_x = std::min(lo_x, x - pad);
    lo_y = std::min(lo_y, y - pad);
    hi_x = std::max(hi_x, x + pad);
    hi_y = std::max(hi_y, y + pad);
  };
  for (const auto & s : scenario.lead.states()) grow(s.x, s.y, d_min);
  if (ego) {
    for (const auto & s : ego->states()) grow(s.x, s.y, 0.0);
  }
  grow(scenario.ego_init.x, scenario.ego_init.y, 0.0);
  grow(scenario.goal.x(), scenario.goal.y(), std::max(scenario.goal_tol, 1.0));

  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
  const double inner = style.width_px - 2.0 * style.margin_px;
  const double scale = inner / span;
  const double height = (hi_y - lo_y) * scale + 2.0 * style.margin_px;
  const Frame f{lo_x, lo_y, scale, height, style.margin_px};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(style.width_px) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(style.width_px) << ' ' << num(height) << "\">\n";
  os << "<title>" << scenario.id << ' ' << planner::to_string(result.status) << "</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const std::size_t every = std::max<std::size_t>(style.circle_every, 1);
  const std::size_t last = ego ? ego->size() : scenario.lead.size();
  for (std::size_t t = 0; t < last; t += every) {
    const auto & s = scenario.lead.held(t);
    os << "<circle cx=\"" << num(f.px(s.x)) << "\" cy=\"" << num(f.py(s.y)) << "\" r=\"" << num(d_min * scale)
       << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  }
  os << polyline(f, scenario.lead, "#d95f02", false);
  if (ego) os << polyline(f, *ego, "#1b9e77", dashed);

  os << "<circle cx=\"" << num(f.px(scenario.ego_init.x)) << "\" cy=\"" << num(f.py(scenario.ego_init.y))
     << "\" r=\"4\" fill=\"#1b9e77\"/>\n";
  os << "<circle cx=\"" << num(f.px(scenario.goal.x())) << "\" cy=\"" << num(f.py(scenario.goal.y()))
     << "\" r=\"" << num(std::max(scenario.goal_tol * scale, 4.0))
     << "\" fill=\"none\" stroke=\"#7570b3\" stroke-width=\"2\"/>\n";

  if (ego) {
    for (const auto & v : result.violations_postcheck) {
      const auto & s = ego->held(v.step);
      const double cx = f.px(s.x), cy = f.py(s.y);
      os << "<path d=\"M" << num(cx - 5) << ',' << num(cy - 5) << " L" << num(cx + 5) << ',' << num(cy + 5) << " M"
         << num(cx - 5) << ',' << num(cy + 5) << " L" << num(cx + 5) << ',' << num(cy - 5)
         << "\" stroke=\"#e7298a\" stroke-width=\"2\"><title>" << core::to_string(v.constraint) << " step "
         << v.step << "</title></path>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace scplan::cli
