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

#ifndef SCPLAN__INGEST__FEATURES_HPP_
#define SCPLAN__INGEST__FEATURES_HPP_

#include "scplan/core/types.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace scplan::ingest
{

constexpr std::size_t kBaseFeatures = 14;
constexpr std::size_t kCollisionFeatures = 9;
constexpr std::size_t kFeatureDim = kBaseFeatures + kCollisionFeatures;
constexpr std::size_t kMaxNeighbors = 5;
constexpr std::size_t kCollisionSlots = 3;
constexpr double kPaddingRadius = 100.0;
constexpr double kDefaultTtcCap = 100.0;

/// Feature layout. Base block:
///   0-5  x, y, vx, vy, ax, ay of s_t
///   6    speed of s_next
///   7    acceleration magnitude of s_next
///   8    heading of s_next
///   9    heading of the front vehicle minus heading of s_next, wrapped to [-pi, pi]
///   10   distance from s_next to the front vehicle
///   11   closing speed towards the front vehicle
///   12   distance from s_next to the goal
///   13   normalized time index in [0, 1]
/// Collision block, nearest neighbour first: (distance, closing speed, TTC) x 3.
using FeatureVector = std::array<double, kFeatureDim>;

constexpr std::size_t ttc_index(std::size_t slot) { return kBaseFeatures + 3 * slot + 2; }

/// Route-level context the two states alone do not carry.
struct FeatureContext
{
  std::optional<core::Vec2> goal;
  double time_fraction{0.0};
};

/// Raises InvalidInput for more than kMaxNeighbors neighbours or ttc_cap <= 0.
FeatureVector build_features(
  const core::State & s_t, const core::State & s_next, const std::vector<core::State> & neighbors,
  const core::Limits & limits, double ttc_cap, const FeatureContext & context = {});

/// Time to collision: gap over closing speed, capped; the cap when not closing.
double time_to_collision(double gap, double closing_speed, double ttc_cap);

/// Translation-invariant description of one transition:
/// [x_{t+1} - x_t, v_t, a_t, v_{t+1}, a_{t+1}].
constexpr std::size_t kTransitionDim = 10;
using TransitionVector = std::array<double, kTransitionDim>;
TransitionVector transition_vector(const core::State & s_t, const core::State & s_next);

/// Context for transition t -> t+1 of a plan in `scenario`: the lead is the
/// only neighbour, the goal is the scenario goal, time is t / horizon.
FeatureVector scenario_context(
  const core::Scenario & scenario, const core::State & s_t, const core::State & s_next,
  std::size_t t, std::size_t horizon, double ttc_cap = kDefaultTtcCap);

}  // namespace scplan::ingest

#endif  // SCPLAN__INGEST__FEATURES_HPP_
