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

#include "scplan/planner/assemble.hpp"

#include <cmath>
#include <string>

namespace scplan::planner
{

using core::Scenario;
using core::State;
using core::Trajectory;

Objective Objective::time_soft(double weight) { return {ObjectiveKind::TimeSoftWeighted, weight}; }

void Objective::validate() const
{
  if (kind == ObjectiveKind::TimeSoftWeighted && !(std::isfinite(weight) && weight >= 0.0)) {
    throw core::InvalidInput("time/soft weight must be finite and nonnegative");
  }
}

std::string_view to_string(ObjectiveKind kind)
{
  switch (kind) {
    case ObjectiveKind::MinTime:
      return "min_time";
    case ObjectiveKind::MinDistance:
      return "min_distance";
    case ObjectiveKind::MinEffort:
      return "min_effort";
    case ObjectiveKind::MinJerk:
      return "min_jerk";
    case ObjectiveKind::MaxSoft:
      return "max_soft";
    case ObjectiveKind::TimeSoftWeighted:
      return "time_soft";
  }
  return "min_time";
}

ObjectiveKind objective_kind_from_string(std::string_view name)
{
  for (auto k :
       {ObjectiveKind::MinTime, ObjectiveKind::MinDistance, ObjectiveKind::MinEffort, ObjectiveKind::MinJerk,
        ObjectiveKind::MaxSoft, ObjectiveKind::TimeSoftWeighted}) {
    if (name == to_string(k)) return k;
  }
  throw core::InvalidInput("unknown objective: " + std::string(name));
}

namespace
{

bool uses_soft_objective(const Objective & o)
{
  return o.kind == ObjectiveKind::MaxSoft || o.kind == ObjectiveKind::TimeSoftWeighted;
}

EqualityBlock pin(RowKind kind, int step, Index first, const core::Vec2 & value)
{
  return {kind, step, {first, first + 1}, MatrixXd::Identity(2, 2), value};
}

/// next - current - dt * rate = 0 for one 2-d quantity.
EqualityBlock dynamics_row(RowKind kind, int step, Index current, Index rate, Index next, double dt)
{
  EqualityBlock e{kind, step, {current, current + 1, rate, rate + 1, next, next + 1}, MatrixXd::Zero(2, 6),
                  VectorXd::Zero(2)};
  e.a.block(0, 0, 2, 2) = -MatrixXd::Identity(2, 2);
  e.a.block(0, 2, 2, 2) = -dt * MatrixXd::Identity(2, 2);
  e.a.block(0, 4, 2, 2) = MatrixXd::Identity(2, 2);
  return e;
}

/// |w|^2 <= bound^2 over a 2-d block.
Inequality norm_ball(RowKind kind, int step, Index first, double bound)
{
  Inequality c;
  c.kind = kind;
  c.step = step;
  c.quad = {{first, first + 1}, 2.0 * MatrixXd::Identity(2, 2), VectorXd::Zero(2), -bound * bound};
  return c;
}

Inequality affine_row(RowKind kind, int step, std::vector<Index> idx, VectorXd coef, double r)
{
  Inequality c;
  c.kind = kind;
  c.step = step;
  c.quad = {std::move(idx), MatrixXd(), std::move(coef), r};
  return c;
}

/// Indices of one transition in the order the cost model's channels need:
/// x_t, x_{t+1}, v_t, a_t, v_{t+1}, a_{t+1}.
std::vector<Index> transition_indices(const VariableLayout & lay, std::size_t t)
{
  std::vector<Index> idx;
  for (Index base : {lay.position(t), lay.position(t + 1), lay.velocity(t), lay.acceleration(t),
                     lay.velocity(t + 1), lay.acceleration(t + 1)}) {
    idx.push_back(base);
    idx.push_back(base + 1);
  }
  return idx;
}

/// Standardized cost-model channels as an affine map of the transition
/// indices: z = L w - k0.
void channel_map(const icl::PhiModel & phi, MatrixXd & l, VectorXd & k0)
{
  MatrixXd m = MatrixXd::Zero(10, 12);
  m(0, 0) = -1.0;
  m(0, 2) = 1.0;
  m(1, 1) = -1.0;
  m(1, 3) = 1.0;
  for (Index i = 2; i < 10; ++i) m(i, i + 2) = 1.0;
  const VectorXd inv_scale = phi.normalizer.scale.head(10).cwiseInverse();
  l = inv_scale.asDiagonal() * m;
  k0 = phi.normalizer.mean.head(10).cwiseProduct(inv_scale);
}

/// phi over one transition as a local quadratic in the decision variables.
LocalQuadratic quadratic_soft_term(const icl::PhiModel & phi, const VariableLayout & lay, std::size_t t)
{
  const auto & qp = phi.quadratic();
  MatrixXd l;
  VectorXd k0;
  channel_map(phi, l, k0);
  const MatrixXd q = 0.5 * (qp.q + qp.q.transpose());
  const VectorXd k = k0 + qp.center;
  MatrixXd p = 2.0 * l.transpose() * q * l;
  p = 0.5 * (p + p.transpose());
  return {transition_indices(lay, t), p, -2.0 * l.transpose() * (q * k), k.dot(q * k) + std::max(qp.offset, 0.0)};
}

/// First-order model of a network cost around the reference transition,
/// with the context frozen at the reference.
LocalQuadratic linearized_soft_term(
  const icl::PhiModel & phi, const Scenario & scenario, const Trajectory & ref, const VariableLayout & lay,
  std::size_t t, double ttc_cap)
{
  const auto ctx = ingest::scenario_context(scenario, ref[t], ref[t + 1], t, lay.horizon, ttc_cap);
  const VectorXd z_ref = phi.normalizer.apply(icl::model_input(phi, ref[t], ref[t + 1], ctx));
  const double value = icl::phi_normalized(phi, z_ref);
  const VectorXd grad = icl::phi_gradient_normalized(phi, z_ref).head(10);
  MatrixXd l;
  VectorXd k0;
  channel_map(phi, l, k0);
  // phi ~ value + grad' (L w - k0 - z_ref)
  return {transition_indices(lay, t), MatrixXd(), l.transpose() * grad, value - grad.dot(k0 + z_ref.head(10))};
}

}  // namespace

VectorXd straight_line_guess(const Scenario & scenario, std::size_t horizon, const VariableLayout & layout)
{
  VectorXd x = VectorXd::Zero(layout.size());
  const core::Vec2 start = scenario.ego_init.position();
  const double span = static_cast<double>(horizon) * scenario.limits.dt;
  const core::Vec2 vel = (scenario.goal - start) / span;
  for (std::size_t t = 0; t <= horizon; ++t) {
    const double f = static_cast<double>(t) / static_cast<double>(horizon);
    x.segment<2>(layout.position(t)) = start + f * (scenario.goal - start);
    x.segment<2>(layout.velocity(t)) = vel;
  }
  return x;
}

ConvexSubproblem assemble_problem(
  const Scenario & scenario, const Objective & objective, std::size_t horizon, const Trajectory * reference,
  const icl::PhiModel * phi, const AssemblyOptions & options)
{
  scenario.validate();
  objective.validate();
  if (horizon < 1) throw core::InvalidInput("horizon must be at least 1");
  const auto cls = core::classify_scenario(scenario);
  if (cls != core::ScenarioClass::Candidate) {
    throw ScenarioRejected("scenario " + scenario.id + " rejected: " + std::string(core::to_string(cls)), cls);
  }
  const auto & lim = scenario.limits;
  if (reference != nullptr) {
    if (reference->horizon() != horizon) throw core::InvalidInput("reference horizon differs from the plan horizon");
    if (std::abs(reference->dt() - lim.dt) > 1e-12) throw core::InvalidInput("reference dt differs from the scenario");
  }
  const bool soft = phi != nullptr && options.soft_constraint;
  if (uses_soft_objective(objective) && phi == nullptr) {
    throw core::InvalidInput("objective " + std::string(to_string(objective.kind)) + " needs a cost model");
  }
  if (phi != nullptr) {
    if (phi->dt > 0.0 && std::abs(phi->dt - lim.dt) > 1e-9) {
      throw core::InvalidInput("cost model was trained at a different dt");
    }
    const bool needs_cost = soft || uses_soft_objective(objective);
    if (needs_cost && phi->variant() != icl::PhiVariant::Quadratic && reference == nullptr) {
      throw icl::UnsupportedVariant("a network cost needs a reference trajectory to linearize around");
    }
  }

  const VariableLayout lay{horizon, objective.kind == ObjectiveKind::MinDistance};
  ConvexSubproblem p;
  p.n_vars = lay.size();
  const double dt = lim.dt;

  p.equalities.push_back(pin(RowKind::Boundary, 0, lay.position(0), scenario.ego_init.position()));
  p.equalities.push_back(pin(RowKind::Boundary, 0, lay.velocity(0), scenario.ego_init.velocity()));
  if (options.pin_initial_accel) {
    p.equalities.push_back(pin(RowKind::Boundary, 0, lay.acceleration(0), scenario.ego_init.acceleration()));
  } else {
    p.inequalities.push_back(norm_ball(RowKind::AccelLimit, 0, lay.acceleration(0), lim.a_max));
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    const int step = static_cast<int>(t);
    p.equalities.push_back(
      dynamics_row(RowKind::PositionDynamics, step, lay.position(t), lay.velocity(t), lay.position(t + 1), dt));
    p.equalities.push_back(
      dynamics_row(RowKind::VelocityDynamics, step, lay.velocity(t), lay.acceleration(t), lay.velocity(t + 1), dt));
  }
  if (scenario.goal_tol == 0.0) {
    p.equalities.push_back(pin(RowKind::Boundary, static_cast<int>(horizon), lay.position(horizon), scenario.goal));
  } else {
    Inequality c = norm_ball(RowKind::Boundary, static_cast<int>(horizon), lay.position(horizon), scenario.goal_tol);
    c.quad.p = -2.0 * scenario.goal;
    c.quad.r = scenario.goal.squaredNorm() - scenario.goal_tol * scenario.goal_tol;
    p.inequalities.push_back(c);
  }
  for (std::size_t t = 1; t <= horizon; ++t) {
    p.inequalities.push_back(norm_ball(RowKind::SpeedLimit, static_cast<int>(t), lay.velocity(t), lim.v_max));
    p.inequalities.push_back(norm_ball(RowKind::AccelLimit, static_cast<int>(t), lay.acceleration(t), lim.a_max));
  }

  if (options.avoidance == AvoidanceMode::Linearized && reference != nullptr) {
    for (std::size_t t = 1; t <= horizon; ++t) {
      const core::Vec2 front = scenario.lead.held(t).position();
      const core::Vec2 delta = (*reference)[t].position() - front;
      const double dist = delta.norm();
      if (!(dist > options.norm_floor)) continue;
      const core::Vec2 n = delta / dist;
      // -n'x_t + n'front + d_min <= 0
      p.inequalities.push_back(affine_row(
        RowKind::Avoidance, static_cast<int>(t), {lay.position(t), lay.position(t) + 1}, -n,
        n.dot(front) + lim.d_min));
    }
  } else if (options.avoidance == AvoidanceMode::HalfPlane) {
    const bool rightward = scenario.goal.x() >= scenario.ego_init.x;
    for (std::size_t t = 0; t <= horizon; ++t) {
      const double front_x = scenario.lead.held(t).x;
      VectorXd coef(1);
      coef[0] = rightward ? 1.0 : -1.0;
      const double r = rightward ? lim.d_min - front_x : lim.d_min + front_x;
      p.inequalities.push_back(affine_row(RowKind::Avoidance, static_cast<int>(t), {lay.position(t)}, coef, r));
    }
  }

  const auto soft_term = [&](std::size_t t) {
    return phi->variant() == icl::PhiVariant::Quadratic
             ? quadratic_soft_term(*phi, lay, t)
             : linearized_soft_term(*phi, scenario, *reference, lay, t, options.ttc_cap);
  };
  if (soft) {
    for (std::size_t t = 0; t < horizon; ++t) {
      Inequality c;
      c.kind = RowKind::SoftConstraint;
      c.step = static_cast<int>(t);
      c.quad = soft_term(t);
      c.quad.r -= lim.epsilon;
      p.inequalities.push_back(std::move(c));
    }
  }

  switch (objective.kind) {
    case ObjectiveKind::MinTime:
      break;
    case ObjectiveKind::MinDistance:
      for (std::size_t t = 0; t < horizon; ++t) {
        Inequality c;
        c.form = Inequality::Form::SecondOrderCone;
        c.kind = RowKind::PathLength;
        c.step = static_cast<int>(t);
        c.idx = {lay.position(t), lay.position(t) + 1, lay.position(t + 1), lay.position(t + 1) + 1, lay.path_bound(t)};
        c.f = MatrixXd::Zero(2, 4);
        c.f.block(0, 0, 2, 2) = -MatrixXd::Identity(2, 2);
        c.f.block(0, 2, 2, 2) = MatrixXd::Identity(2, 2);
        c.g = VectorXd::Zero(2);
        p.inequalities.push_back(std::move(c));
        VectorXd one(1);
        one[0] = 1.0;
        p.objective.push_back({{lay.path_bound(t)}, MatrixXd(), one, 0.0});
      }
      break;
    case ObjectiveKind::MinEffort:
      for (std::size_t t = 0; t < horizon; ++t) {
        const Index a = lay.acceleration(t);
        p.objective.push_back({{a, a + 1}, 2.0 * MatrixXd::Identity(2, 2), VectorXd::Zero(2), 0.0});
      }
      break;
    case ObjectiveKind::MinJerk:
      for (std::size_t t = 0; t < horizon; ++t) {
        const Index a0 = lay.acceleration(t);
        const Index a1 = lay.acceleration(t + 1);
        MatrixXd h = MatrixXd::Zero(4, 4);
        h.block(0, 0, 2, 2) = 2.0 * MatrixXd::Identity(2, 2);
        h.block(2, 2, 2, 2) = 2.0 * MatrixXd::Identity(2, 2);
        h.block(0, 2, 2, 2) = -2.0 * MatrixXd::Identity(2, 2);
        h.block(2, 0, 2, 2) = -2.0 * MatrixXd::Identity(2, 2);
        p.objective.push_back({{a0, a0 + 1, a1, a1 + 1}, h, VectorXd::Zero(4), 0.0});
      }
      break;
    case ObjectiveKind::MaxSoft:
    case ObjectiveKind::TimeSoftWeighted:
      for (std::size_t t = 0; t < horizon; ++t) p.objective.push_back(soft_term(t));
      break;
  }

  if (reference != nullptr) {
    p.initial_guess = VectorXd::Zero(lay.size());
    for (std::size_t t = 0; t <= horizon; ++t) {
      const auto & s = (*reference)[t];
      p.initial_guess.segment<6>(lay.position(t)) = Eigen::Map<const Eigen::Matrix<double, 6, 1>>(s.to_array().data());
    }
  } else {
    p.initial_guess = straight_line_guess(scenario, horizon, lay);
  }
  p.check_structure();
  return p;
}

Trajectory extract_trajectory(const VectorXd & x, std::size_t horizon, double dt)
{
  const VariableLayout lay{horizon, false};
  if (x.size() < lay.size()) throw core::InvalidInput("solution vector too short for the horizon");
  std::vector<State> states;
  states.reserve(horizon + 1);
  for (std::size_t t = 0; t <= horizon; ++t) {
    states.push_back(State::make(
      x.segment<2>(lay.position(t)), x.segment<2>(lay.velocity(t)), x.segment<2>(lay.acceleration(t))));
  }
  return Trajectory(std::move(states), dt);
}

double path_length(const Trajectory & traj)
{
  double total = 0.0;
  for (std::size_t t = 0; t < traj.horizon(); ++t) total += (traj[t + 1].position() - traj[t].position()).norm();
  return total;
}

double control_effort(const Trajectory & traj)
{
  double total = 0.0;
  for (std::size_t t = 0; t < traj.horizon(); ++t) total += traj[t].acceleration().squaredNorm();
  return total;
}

double jerk_cost(const Trajectory & traj)
{
  double total = 0.0;
  for (std::size_t t = 0; t < traj.horizon(); ++t) {
    total += (traj[t + 1].acceleration() - traj[t].acceleration()).squaredNorm();
  }
  return total;
}

double soft_cost(const Trajectory & traj, const Scenario & scenario, const icl::PhiModel & phi, double ttc_cap)
{
  double total = 0.0;
  for (std::size_t t = 0; t < traj.horizon(); ++t) {
    const auto ctx = ingest::scenario_context(scenario, traj[t], traj[t + 1], t, traj.horizon(), ttc_cap);
    total += icl::phi_eval(phi, traj[t], traj[t + 1], ctx);
  }
  return total;
}

std::pair<double, std::size_t> worst_soft_cost(
  const Trajectory & traj, const Scenario & scenario, const icl::PhiModel & phi, double ttc_cap)
{
  std::pair<double, std::size_t> worst{0.0, 0};
  for (std::size_t t = 0; t < traj.horizon(); ++t) {
    const auto ctx = ingest::scenario_context(scenario, traj[t], traj[t + 1], t, traj.horizon(), ttc_cap);
    const double v = icl::phi_eval(phi, traj[t], traj[t + 1], ctx);
    if (t == 0 || v > worst.first) worst = {v, t};
  }
  return worst;
}

double objective_functional(
  const Objective & objective, const Trajectory & traj, const Scenario & scenario, const icl::PhiModel * phi)
{
  switch (objective.kind) {
    case ObjectiveKind::MinTime:
      return 0.0;
    case ObjectiveKind::MinDistance:
      return path_length(traj);
    case ObjectiveKind::MinEffort:
      return control_effort(traj);
    case ObjectiveKind::MinJerk:
      return jerk_cost(traj);
    case ObjectiveKind::MaxSoft:
    case ObjectiveKind::TimeSoftWeighted:
      if (phi == nullptr) throw core::InvalidInput("soft-cost objective needs a cost model");
      return soft_cost(traj, scenario, *phi);
  }
  return 0.0;
}

}  // namespace scplan::planner
