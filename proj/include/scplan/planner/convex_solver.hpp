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

#ifndef SCPLAN__PLANNER__CONVEX_SOLVER_HPP_
#define SCPLAN__PLANNER__CONVEX_SOLVER_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scplan::planner
{

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Raised when an assembled problem is not structurally convex.
class AssemblyError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// What a block of rows encodes; used for bookkeeping and tests only.
enum class RowKind {
  PositionDynamics,
  VelocityDynamics,
  Boundary,
  SpeedLimit,
  AccelLimit,
  Avoidance,
  SoftConstraint,
  PathLength,
  Generic,
};

std::string_view to_string(RowKind kind);

/// a * x[idx] = b
struct EqualityBlock
{
  RowKind kind{RowKind::Generic};
  int step{-1};
  std::vector<Index> idx;
  MatrixXd a;
  VectorXd b;
};

/// Quadratic form over a subset of the variables: 0.5 w'Pw + p'w + r with
/// w = x[idx]. An empty P means the term is affine.
struct LocalQuadratic
{
  std::vector<Index> idx;
  MatrixXd p_mat;
  VectorXd p;
  double r{0.0};

  double value(const VectorXd & x) const;
};

struct Inequality
{
  enum class Form {
    Quadratic,        // quad <= 0
    SecondOrderCone,  // ||f * x[idx without last] + g|| <= x[idx.back()]
  };

  Form form{Form::Quadratic};
  RowKind kind{RowKind::Generic};
  int step{-1};
  LocalQuadratic quad;
  std::vector<Index> idx;
  MatrixXd f;
  VectorXd g;

  /// Residual under the "<= 0 is satisfied" convention.
  double residual(const VectorXd & x) const;
};

/// minimize sum(objective) s.t. equalities, inequalities.
struct ConvexSubproblem
{
  Index n_vars{0};
  std::vector<LocalQuadratic> objective;
  std::vector<EqualityBlock> equalities;
  std::vector<Inequality> inequalities;
  /// Starting guess for the solver; projected onto the equalities.
  VectorXd initial_guess;

  double objective_value(const VectorXd & x) const;

  /// Throws AssemblyError unless every quadratic is PSD, every index is in
  /// range, and every cone's bound variable is a free epigraph variable (it
  /// appears in no equality).
  void check_structure() const;

  std::size_t count(RowKind kind) const;
};

struct SolverOptions
{
  /// Duality-gap target, relative to max(1, |objective|).
  double tol{1e-8};
  /// Cap on Newton steps across both phases.
  std::size_t max_iters{600};
  double barrier_growth{20.0};
  /// Strictness required of a feasible point.
  double feasibility_margin{1e-8};
};

enum class SolveStatus { Optimal, Infeasible, IterationLimit };
std::string_view to_string(SolveStatus status);

struct SolveResult
{
  SolveStatus status{SolveStatus::Infeasible};
  VectorXd x;
  double objective{0.0};
  double gap{0.0};
  double equality_residual{0.0};
  std::size_t newton_steps{0};
  /// Why the solver declared infeasibility.
  std::string note;
};

/// Two-phase log-barrier interior-point method. Phase one minimizes the
/// largest inequality residual; a certified positive lower bound, or a
/// feasible set without interior, reports Infeasible.
SolveResult solve_subproblem(const ConvexSubproblem & problem, const SolverOptions & options = {});

}  // namespace scplan::planner

#endif  // SCPLAN__PLANNER__CONVEX_SOLVER_HPP_
