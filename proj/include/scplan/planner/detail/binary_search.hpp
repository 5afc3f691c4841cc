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

#ifndef SCPLAN__PLANNER__DETAIL__BINARY_SEARCH_HPP_
#define SCPLAN__PLANNER__DETAIL__BINARY_SEARCH_HPP_

#include "scplan/planner/scp.hpp"

namespace scplan::planner
{

template <class Probe>
PlanResult binary_search_horizon(
  std::size_t t_min, std::size_t t_max, Probe && probe, std::vector<std::pair<std::size_t, PlanResult>> * visited)
{
  std::optional<PlanResult> best;
  std::optional<PlanResult> last;
  std::vector<std::pair<std::size_t, bool>> probes;
  std::size_t left = t_min;
  std::size_t right = t_max;
  while (left <= right) {
    const std::size_t t = (left + right) / 2;
    PlanResult r = probe(t);
    probes.emplace_back(t, r.feasible());
    if (visited != nullptr) visited->emplace_back(t, r);
    if (r.feasible()) {
      best = std::move(r);
      if (t == 0) break;
      right = t - 1;
    } else {
      last = std::move(r);
      left = t + 1;
    }
  }
  PlanResult out = best ? std::move(*best) : last ? std::move(*last) : PlanResult{};
  if (!best && !last) out.note = "empty horizon range";
  out.probes = std::move(probes);
  return out;
}

}  // namespace scplan::planner

#endif  // SCPLAN__PLANNER__DETAIL__BINARY_SEARCH_HPP_
