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

#ifndef ICL__FIXTURES_HPP_
#define ICL__FIXTURES_HPP_

#include "scplan/ingest/dataset.hpp"

#include <cmath>
#include <random>

namespace scplan::icl::testing
{

constexpr double kFixtureDt = 0.4;

/// Dynamics-consistent transition whose velocity change is `dv`.
inline ingest::Transition transition_with_dv(
  const core::Vec2 & p, const core::Vec2 & v, const core::Vec2 & dv, const core::Vec2 & a_next)
{
  ingest::Transition t;
  const core::Vec2 a = dv / kFixtureDt;
  t.s_t = core::State::make(p, v, a);
  t.s_next = core::State::make(p + v * kFixtureDt, v + dv, a_next);
  return t;
}

inline core::Vec2 random_direction(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const double th = angle(rng);
  return {std::cos(th), std::sin(th)};
}

/// Expert transitions with |dv| <= 0.5, all in the train split. The next
/// acceleration repeats the current one up to small noise.
inline ingest::TransitionDataset separable_experts(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-50.0, 50.0);
  std::uniform_real_distribution<double> vel(-3.0, 3.0);
  std::uniform_real_distribution<double> mag(0.0, 0.5);
  std::normal_distribution<double> jitter(0.0, 0.05);
  ingest::TransitionDataset ds;
  for (std::size_t i = 0; i < n; ++i) {
    const core::Vec2 p(pos(rng), pos(rng));
    const core::Vec2 v(vel(rng), vel(rng));
    const core::Vec2 dv = mag(rng) * random_direction(rng);
    const core::Vec2 a_next = dv / kFixtureDt + core::Vec2(jitter(rng), jitter(rng));
    auto t = transition_with_dv(p, v, dv, a_next);
    t.track_id = static_cast<std::int64_t>(i);
    t.split = ingest::Split::Train;
    ds.transitions.push_back(t);
  }
  return ds;
}

/// Copies of the experts with the velocity change replaced by one of norm in
/// [2, 4]; everything else about the transition is kept.
inline std::vector<ingest::Transition> separable_negatives(
  const ingest::TransitionDataset & experts, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(2.0, 4.0);
  std::vector<ingest::Transition> out;
  for (const auto & e : experts.transitions) {
    auto t = e;
    const core::Vec2 dv = mag(rng) * random_direction(rng);
    t.s_next.vx = t.s_t.vx + dv.x();
    t.s_next.vy = t.s_t.vy + dv.y();
    out.push_back(t);
  }
  return out;
}

}  // namespace scplan::icl::testing

#endif  // ICL__FIXTURES_HPP_
