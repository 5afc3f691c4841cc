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

#include "scplan/ingest/synth.hpp"

#include "scplan/core/constraints.hpp"
#include "scplan/core/kinematics.hpp"
#include "scplan/ingest/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace scplan::ingest
{
namespace
{

using core::ScenarioKind;
using core::State;
using core::Vec2;

constexpr double kPi = std::numbers::pi;

struct PathShape
{
  ScenarioKind kind;
  double approach;  // straight length before the turn
  double radius;
  double rotation;
  Vec2 offset;

  Vec2 local(double s) const
  {
    switch (kind) {
      case ScenarioKind::HighwayRightward:
        return {s, 0.0};
      case ScenarioKind::HighwayLeftward:
        return {-s, 0.0};
      case ScenarioKind::Intersection: {
        if (s <= approach) return {s, 0.0};
        const double arc = 0.5 * kPi * radius;
        if (s <= approach + arc) {
          const double phi = (s - approach) / radius;
          return {approach + radius * std::sin(phi), radius - radius * std::cos(phi)};
        }
        return {approach + radius, radius + (s - approach - arc)};
      }
      case ScenarioKind::Roundabout: {
        if (s <= approach) return {s, 0.0};
        const double phi = (s - approach) / radius;
        return {approach + radius * std::sin(phi), radius - radius * std::cos(phi)};
      }
    }
    return {s, 0.0};
  }

  Vec2 at(double s) const
  {
    const Vec2 p = local(s);
    const double c = std::cos(rotation);
    const double sn = std::sin(rotation);
    return offset + Vec2(c * p.x() - sn * p.y(), sn * p.x() + c * p.y());
  }
};

/// Arc length s(t) = v0 t - (A / w) (cos(w t + phase) - cos(phase)), shifted so s(-lag) = 0.
struct SpeedProfile
{
  double v0;
  double amplitude;
  double omega;
  double phase;

  double raw(double t) const
  {
    return v0 * t - (amplitude / omega) * (std::cos(omega * t + phase) - std::cos(phase));
  }
};

struct Pair
{
  std::vector<State> ego;
  std::vector<State> lead;
};

/// Samples positions, differences them into velocity and acceleration, then
/// rolls the accelerations forward so the discrete dynamics hold exactly.
std::vector<State> track_from_positions(const std::vector<Vec2> & p, double dt, std::size_t steps)
{
  std::vector<Vec2> v(steps + 2);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) v[k] = (p[k + 1] - p[k]) / dt;
  std::vector<Vec2> a(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) a[k] = (v[k + 1] - v[k]) / dt;

  std::vector<State> out;
  out.reserve(steps + 1);
  out.push_back(State::make(p[0], v[0], a[0]));
  for (std::size_t k = 0; k < steps; ++k) {
    State next = core::step_kinematics(out.back(), a[k], dt);
    next.ax = a[k + 1].x();
    next.ay = a[k + 1].y();
    out.push_back(next);
  }
  return out;
}

bool within_limits(const std::vector<State> & track, const core::Limits & lim)
{
  for (const auto & s : track) {
    if (s.velocity().norm() > 0.95 * lim.v_max) return false;
    if (s.acceleration().norm() > 0.9 * lim.a_max) return false;
  }
  return true;
}

Pair generate_pair(ScenarioKind kind, std::mt19937_64 & rng, const core::Limits & lim, std::size_t steps)
{
  const auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const bool highway = core::is_highway(kind);
  const double dt = lim.dt;

  for (int attempt = 0; attempt < 1000; ++attempt) {
    PathShape path{kind, uniform(15.0, 40.0), 0.0, 0.0, Vec2::Zero()};
    SpeedProfile prof{};
    if (highway) {
      path.offset = Vec2(uniform(-50.0, 50.0), uniform(-8.0, 8.0));
      prof.v0 = std::min(uniform(8.0, 12.0), 0.8 * lim.v_max);
      prof.amplitude = uniform(0.0, 1.5);
    } else {
      path.radius = kind == ScenarioKind::Intersection ? uniform(15.0, 25.0) : uniform(22.0, 32.0);
      path.rotation = uniform(0.0, 2.0 * kPi);
      path.offset = Vec2(uniform(-30.0, 30.0), uniform(-30.0, 30.0));
      prof.v0 = std::min(uniform(5.0, 7.0), std::sqrt(0.6 * lim.a_max * path.radius));
      prof.amplitude = uniform(0.0, 0.8);
    }
    prof.amplitude = std::min(prof.amplitude, 0.4 * prof.v0);
    prof.omega = uniform(0.2, 0.6);
    prof.phase = uniform(0.0, 2.0 * kPi);
    const double slowest = prof.v0 - prof.amplitude;
    const double lag = std::max(uniform(2.5, 4.0), 16.0 / slowest);

    std::vector<Vec2> ego_pos;
    std::vector<Vec2> lead_pos;
    const double origin = prof.raw(-lag);
    for (std::size_t k = 0; k < steps + 3; ++k) {
      const double t = static_cast<double>(k) * dt;
      ego_pos.push_back(path.at(prof.raw(t - lag) - origin));
      lead_pos.push_back(path.at(prof.raw(t) - origin));
    }
    Pair pair{track_from_positions(ego_pos, dt, steps), track_from_positions(lead_pos, dt, steps)};
    if (within_limits(pair.ego, lim) && within_limits(pair.lead, lim)) return pair;
  }
  throw core::InvalidInput("synth: limits too tight for the generated paths");
}

}  // namespace

SynthRecording synth_tracks(
  ScenarioKind kind, std::size_t n, std::uint64_t seed, const core::Limits & limits,
  std::size_t steps)
{
  limits.validate();
  if (n == 0) throw core::InvalidInput("synth: n must be at least 1");
  if (steps == 0) throw core::InvalidInput("synth: steps must be at least 1");

  SynthRecording out;
  out.meta.frame_rate = 1.0 / limits.dt;
  out.meta.recording_id = "synth-" + std::string(core::to_string(kind)) + "-" + std::to_string(seed);
  std::mt19937_64 rng(seed);
  const auto stride = static_cast<std::int64_t>(steps + 10);
  for (std::size_t k = 0; k < n; ++k) {
    const auto pair = generate_pair(kind, rng, limits, steps);
    const auto first_frame = static_cast<std::int64_t>(k) * stride;
    const auto emit = [&](const std::vector<State> & track, std::int64_t id) {
      for (std::size_t i = 0; i < track.size(); ++i) {
        const auto & s = track[i];
        out.records.push_back(
          {id, first_frame + static_cast<std::int64_t>(i), s.x, s.y, s.vx, s.vy, s.ax, s.ay});
      }
    };
    emit(pair.ego, 2 * static_cast<std::int64_t>(k));
    emit(pair.lead, 2 * static_cast<std::int64_t>(k) + 1);
  }
  return out;
}

std::vector<core::Scenario> synth_scenarios(
  ScenarioKind kind, std::size_t n, std::uint64_t seed, const core::Limits & limits,
  std::size_t steps)
{
  const auto rec = synth_tracks(kind, n, seed, limits, steps);
  PairingConfig pairing;
  pairing.kind = kind;
  pairing.limits = limits;
  auto extraction = extract_scenarios(rec.records, rec.meta, pairing);
  for (auto & s : extraction.scenarios) {
    if (core::classify_scenario(s) != core::ScenarioClass::Candidate) {
      throw std::logic_error("synth: generated a non-candidate scenario " + s.id);
    }
  }
  return std::move(extraction.scenarios);
}

}  // namespace scplan::ingest
