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

#include "scplan/ingest/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scplan::ingest
{
namespace
{

using core::State;
using core::Vec2;

double heading_of(const Vec2 & v) { return v.norm() > 1e-9 ? std::atan2(v.y(), v.x()) : 0.0; }

double wrap_angle(double a)
{
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

/// Rate at which the gap to `other` shrinks, seen from `self`.
double closing_speed(const State & self, const State & other)
{
  const Vec2 r = other.position() - self.position();
  const double d = r.norm();
  if (d < 1e-12) return 0.0;
  return -r.dot(other.velocity() - self.velocity()) / d;
}

Vec2 travel_direction(const State & s_t, const State & s_next)
{
  if (s_t.velocity().norm() > 1e-6) return s_t.velocity().normalized();
  const Vec2 step = s_next.position() - s_t.position();
  if (step.norm() > 1e-9) return step.normalized();
  return Vec2(1.0, 0.0);
}

}  // namespace

double time_to_collision(double gap, double closing, double ttc_cap)
{
  if (!(closing > 0.0)) return ttc_cap;
  // Keep the value strictly positive even at zero gap.
  return std::clamp(gap / closing, ttc_cap * 1e-12, ttc_cap);
}

FeatureVector build_features(
  const State & s_t, const State & s_next, const std::vector<State> & neighbors,
  const core::Limits & limits, double ttc_cap, const FeatureContext & context)
{
  limits.validate();
  if (neighbors.size() > kMaxNeighbors) {
    throw core::InvalidInput("build_features: more than 5 neighbors");
  }
  if (!(ttc_cap > 0.0) || !std::isfinite(ttc_cap)) {
    throw core::InvalidInput("build_features: ttc_cap must be positive");
  }
  if (!s_t.finite() || !s_next.finite()) throw core::InvalidInput("build_features: non-finite state");
  for (const auto & n : neighbors) {
    if (!n.finite()) throw core::InvalidInput("build_features: non-finite neighbor");
  }

  FeatureVector f{};
  const auto base = s_t.to_array();
  std::copy(base.begin(), base.end(), f.begin());
  f[6] = s_next.velocity().norm();
  f[7] = s_next.acceleration().norm();
  f[8] = heading_of(s_next.velocity());

  // Front vehicle: nearest neighbour ahead along the direction of travel.
  const Vec2 dir = travel_direction(s_t, s_next);
  const State * front = nullptr;
  double front_dist = 0.0;
  for (const auto & n : neighbors) {
    const Vec2 r = n.position() - s_t.position();
    if (r.dot(dir) <= 0.0) continue;
    const double d = r.norm();
    if (front == nullptr || d < front_dist) {
      front = &n;
      front_dist = d;
    }
  }
  if (front != nullptr) {
    f[9] = wrap_angle(heading_of(front->velocity()) - f[8]);
    f[10] = (front->position() - s_next.position()).norm();
    f[11] = closing_speed(s_next, *front);
  } else {
    f[9] = 0.0;
    f[10] = kPaddingRadius;
    f[11] = 0.0;
  }
  f[12] = context.goal ? (*context.goal - s_next.position()).norm() : 0.0;
  f[13] = std::clamp(context.time_fraction, 0.0, 1.0);

  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    order.emplace_back((neighbors[i].position() - s_t.position()).norm(), i);
  }
  std::sort(order.begin(), order.end());
  for (std::size_t slot = 0; slot < kCollisionSlots; ++slot) {
    const std::size_t at = kBaseFeatures + 3 * slot;
    if (slot < order.size()) {
      const auto & n = neighbors[order[slot].second];
      const double gap = order[slot].first;
      const double closing = closing_speed(s_t, n);
      f[at] = gap;
      f[at + 1] = closing;
      f[at + 2] = time_to_collision(gap, closing, ttc_cap);
    } else {
      f[at] = kPaddingRadius;
      f[at + 1] = 0.0;
      f[at + 2] = ttc_cap;
    }
  }
  return f;
}

TransitionVector transition_vector(const State & s_t, const State & s_next)
{
  return {
    s_next.x - s_t.x, s_next.y - s_t.y, s_t.vx,     s_t.vy,     s_t.ax,
    s_t.ay,           s_next.vx,        s_next.vy,  s_next.ax,  s_next.ay};
}

FeatureVector scenario_context(
  const core::Scenario & scenario, const State & s_t, const State & s_next, std::size_t t,
  std::size_t horizon, double ttc_cap)
{
  FeatureContext ctx;
  ctx.goal = scenario.goal;
  ctx.time_fraction = horizon > 0 ? static_cast<double>(t) / static_cast<double>(horizon) : 0.0;
  return build_features(s_t, s_next, {scenario.lead.held(t)}, scenario.limits, ttc_cap, ctx);
}

}  // namespace scplan::ingest
