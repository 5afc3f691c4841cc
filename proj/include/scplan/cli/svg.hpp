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

#ifndef SCPLAN__CLI__SVG_HPP_
#define SCPLAN__CLI__SVG_HPP_

#include "scplan/core/types.hpp"
#include "scplan/planner/scp.hpp"

#include <string>

namespace scplan::cli
{

struct SvgStyle
{
  double width_px{640.0};
  double margin_px{24.0};
  /// A d_min circle around the lead every this many steps.
  std::size_t circle_every{5};
};

/// Plain SVG of one result: ego path (planned, else attempted, else the
/// reference drawn dashed), lead path, d_min circles around the lead, start
/// and goal markers, and a cross at the ego position of every recorded
/// violation.
std::string render_svg(
  const core::Scenario & scenario, const planner::PlanResult & result, const SvgStyle & style = {});

}  // namespace scplan::cli

#endif  // SCPLAN__CLI__SVG_HPP_
