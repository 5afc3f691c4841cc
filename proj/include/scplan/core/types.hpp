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

#ifndef SCPLAN__CORE__TYPES_HPP_
#define SCPLAN__CORE__TYPES_HPP_

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scplan::core
{

using Vec2 = Eigen::Vector2d;

/// Thrown for malformed or non-finite inputs.
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Point-mass sample of one vehicle at one frame.
struct State
{
  double x{0.0};
  double y{0.0};
  double vx{0.0};
  double vy{0.0};
  double ax{0.0};
  double ay{0.0};

  Vec2 position() const { return {x, y}; }
  Vec2 velocity() const { return {vx, vy}; }
  Vec2 acceleration() const { return {ax, ay}; }
  bool finite() const;

  std::array<double, 6> to_array() const { return {x, y, vx, vy, ax, ay}; }
  static State from_array(const std::array<double, 6> & v);
  static State make(const Vec2 & p, const Vec2 & v, const Vec2 & a);

  bool operator==(const State &) const = default;
};

struct Limits
{
  double v_max{13.9};
  double a_max{5.0};
  double d_min{10.0};
  double dt{0.1};
  double epsilon{0.05};

  /// Throws InvalidInput unless every field is finite and positive.
  void validate() const;

  bool operator==(const Limits &) const = default;
};

/// Uniformly sampled sequence of states. Never empty.
class Trajectory
{
public:
  Trajectory(std::vector<State> states, double dt);

  const std::vector<State> & states() const { return states_; }
  const State & operator[](std::size_t i) const { return states_[i]; }
  const State & front() const { return states_.front(); }
  const State & back() const { return states_.back(); }
  std::size_t size() const { return states_.size(); }
  /// Number of transitions, i.e. size() - 1.
  std::size_t horizon() const { return states_.size() - 1; }
  double dt() const { return dt_; }
  double duration() const { return dt_ * static_cast<double>(horizon()); }

  /// State at index t, holding the final state beyond the end.
  const State & held(std::size_t t) const;

private:
  std::vector<State> states_;
  double dt_;
};

enum class ScenarioKind { Intersection, Roundabout, HighwayRightward, HighwayLeftward };

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);
bool is_highway(ScenarioKind kind);

struct Scenario
{
  std::string id;
  State ego_init;
  Vec2 goal{Vec2::Zero()};
  double goal_tol{0.0};
  Trajectory lead;
  Limits limits;
  ScenarioKind kind{ScenarioKind::Intersection};
  /// Recorded expert path of the ego vehicle, when known.
  std::optional<Trajectory> reference;

  void validate() const;
};

enum class ConstraintId { C1 = 1, C2, C3, C4, C5, C6, C7 };
enum class Hardness { Hard, Soft };
enum class Convexity { Convex, Nonconvex, PossiblyNonconvex };

struct ConstraintInfo
{
  ConstraintId id;
  Hardness hardness;
  Convexity convexity;
  std::string_view description;
};

const ConstraintInfo & constraint_info(ConstraintId id);
std::string_view to_string(ConstraintId id);
constexpr std::array<ConstraintId, 7> kAllConstraints{
  ConstraintId::C1, ConstraintId::C2, ConstraintId::C3, ConstraintId::C4,
  ConstraintId::C5, ConstraintId::C6, ConstraintId::C7};

struct ViolationRecord
{
  ConstraintId constraint;
  std::size_t step;
  /// Residual g(x); positive means violated.
  double magnitude;
};

}  // namespace scplan::core

#endif  // SCPLAN__CORE__TYPES_HPP_
