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

#include "scplan/planner/convex_solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>

namespace scplan::planner
{

std::string_view to_string(RowKind kind)
{
  switch (kind) {
    case RowKind::PositionDynamics:
      return "position_dynamics";
    case RowKind::VelocityDynamics:
      return "velocity_dynamics";
    case RowKind::Boundary:
      return "boundary";
    case RowKind::SpeedLimit:
      return "speed_limit";
    case RowKind::AccelLimit:
      return "accel_limit";
    case RowKind::Avoidance:
      return "avoidance";
    case RowKind::SoftConstraint:
      return "soft_constraint";
    case RowKind::PathLength:
      return "path_length";
    case RowKind::Generic:
      return "generic";
  }
  return "generic";
}

std::string_view to_string(SolveStatus status)
{
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::IterationLimit:
      return "iteration_limit";
  }
  return "infeasible";
}

namespace
{

VectorXd gather(const VectorXd & x, const std::vector<Index> & idx)
{
  VectorXd w(static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) w[static_cast<Index>(i)] = x[idx[i]];
  return w;
}

bool has_quadratic_part(const LocalQuadratic & q) { return q.p_mat.size() > 0; }

}  // namespace

double LocalQuadratic::value(const VectorXd & x) const
{
  const VectorXd w = gather(x, idx);
  double v = r + (p.size() > 0 ? p.dot(w) : 0.0);
  if (has_quadratic_part(*this)) v += 0.5 * w.dot(p_mat * w);
  return v;
}

double Inequality::residual(const VectorXd & x) const
{
  if (form == Form::Quadratic) return quad.value(x);
  const VectorXd w = gather(x, idx);
  const Index k = w.size() - 1;
  return (f * w.head(k) + g).norm() - w[k];
}

double ConvexSubproblem::objective_value(const VectorXd & x) const
{
  double v = 0.0;
  for (const auto & term : objective) v += term.value(x);
  return v;
}

std::size_t ConvexSubproblem::count(RowKind kind) const
{
  std::size_t n = 0;
  for (const auto & e : equalities) n += e.kind == kind ? 1 : 0;
  for (const auto & c : inequalities) n += c.kind == kind ? 1 : 0;
  return n;
}

namespace
{

void check_quadratic(const LocalQuadratic & q, Index n_vars, const char * what)
{
  const auto k = static_cast<Index>(q.idx.size());
  for (Index i : q.idx) {
    if (i < 0 || i >= n_vars) throw AssemblyError(std::string(what) + ": variable index out of range");
  }
  if (q.p.size() != 0 && q.p.size() != k) throw AssemblyError(std::string(what) + ": linear part size mismatch");
  if (!has_quadratic_part(q)) return;
  if (q.p_mat.rows() != k || q.p_mat.cols() != k) {
    throw AssemblyError(std::string(what) + ": quadratic part size mismatch");
  }
  if (!q.p_mat.allFinite() || (q.p.size() > 0 && !q.p.allFinite()) || !std::isfinite(q.r)) {
    throw AssemblyError(std::string(what) + ": non-finite coefficients");
  }
  const double asym = (q.p_mat - q.p_mat.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, q.p_mat.cwiseAbs().maxCoeff());
  if (asym > 1e-9 * scale) throw AssemblyError(std::string(what) + ": quadratic part not symmetric");
  const double lambda_min =
    Eigen::SelfAdjointEigenSolver<MatrixXd>(q.p_mat, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (lambda_min < -1e-9 * scale) {
    throw AssemblyError(std::string(what) + ": quadratic part not positive semidefinite");
  }
}

}  // namespace

void ConvexSubproblem::check_structure() const
{
  if (n_vars <= 0) throw AssemblyError("problem has no variables");
  for (const auto & term : objective) check_quadratic(term, n_vars, "objective term");
  std::vector<char> in_equality(static_cast<std::size_t>(n_vars), 0);
  for (const auto & e : equalities) {
    if (e.a.rows() != e.b.size() || e.a.cols() != static_cast<Index>(e.idx.size())) {
      throw AssemblyError("equality block size mismatch");
    }
    for (Index i : e.idx) {
      if (i < 0 || i >= n_vars) throw AssemblyError("equality: variable index out of range");
      in_equality[static_cast<std::size_t>(i)] = 1;
    }
  }
  for (const auto & c : inequalities) {
    if (c.form == Inequality::Form::Quadratic) {
      check_quadratic(c.quad, n_vars, "inequality");
      continue;
    }
    if (c.idx.size() < 2) throw AssemblyError("cone needs at least one argument and a bound");
    for (Index i : c.idx) {
      if (i < 0 || i >= n_vars) throw AssemblyError("cone: variable index out of range");
    }
    if (c.f.cols() != static_cast<Index>(c.idx.size()) - 1 || c.f.rows() != c.g.size()) {
      throw AssemblyError("cone size mismatch");
    }
    if (in_equality[static_cast<std::size_t>(c.idx.back())]) {
      throw AssemblyError("cone bound variable must not appear in an equality");
    }
  }
  if (initial_guess.size() != 0 && initial_guess.size() != n_vars) {
    throw AssemblyError("initial guess size mismatch");
  }
}

namespace
{

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Log-barrier view of a problem. In phase one every quadratic inequality is
/// relaxed by the extra variable s (the last one) and the objective is s;
/// cones are left out because their bound variables are free.
class Barrier
{
public:
  Barrier(const ConvexSubproblem & problem, bool phase_one)
  : p_(problem), phase_one_(phase_one), n_(problem.n_vars + (phase_one ? 1 : 0))
  {
    for (const auto & c : p_.inequalities) {
      if (phase_one_ && c.form == Inequality::Form::SecondOrderCone) continue;
      terms_.push_back(&c);
      theta_ += c.form == Inequality::Form::SecondOrderCone ? 2.0 : 1.0;
    }
    weights_.assign(terms_.size(), 1.0);
    if (phase_one_) theta_ += 1.0;  // s >= -1
    touched_.assign(static_cast<std::size_t>(n_), 0);
    for (const auto * c : terms_) {
      for (Index i : c->form == Inequality::Form::Quadratic ? c->quad.idx : c->idx) {
        touched_[static_cast<std::size_t>(i)] = 1;
      }
    }
    if (!phase_one_) {
      for (const auto & o : p_.objective) {
        if (!has_quadratic_part(o)) continue;
        for (Index i : o.idx) touched_[static_cast<std::size_t>(i)] = 1;
      }
    } else {
      touched_.back() = 1;
    }
    // Variables tied to others by an equality move with them; only fully
    // isolated ones get the placeholder curvature.
    isolated_.assign(static_cast<std::size_t>(n_), 1);
    for (Index i = 0; i < n_; ++i) isolated_[static_cast<std::size_t>(i)] = !touched_[static_cast<std::size_t>(i)];
    for (const auto & e : p_.equalities) {
      for (Index i : e.idx) isolated_[static_cast<std::size_t>(i)] = 0;
    }
  }

  /// Phase one only: relaxes term i as g_i(x) <= w_i s with
  /// w_i = max(1, g_i(x0)), so s starts near one whatever the residual units.
  void scale_relaxation(const VectorXd & x)
  {
    for (std::size_t i = 0; i < terms_.size(); ++i) weights_[i] = std::max(1.0, terms_[i]->quad.value(x));
  }

  /// Phase one only: keeps every constrained variable within `radius` of
  /// `center` so the relaxed problem stays bounded.
  void set_trust_region(const VectorXd & center, double radius)
  {
    center_ = center;
    radius_sq_ = radius * radius;
    for (Index i = 0; i + 1 < n_; ++i) theta_ += touched_[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
  }

  Index size() const { return n_; }
  double theta() const { return theta_; }
  Index s_index() const { return n_ - 1; }

  double objective(const VectorXd & y) const
  {
    return phase_one_ ? y[s_index()] : p_.objective_value(y);
  }

  /// Value of t * objective + barrier; +inf outside the domain.
  double value(const VectorXd & y, double t) const
  {
    double v = t * objective(y);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto * c = terms_[i];
      if (c->form == Inequality::Form::Quadratic) {
        const double f = relaxed(c->quad.value(y), y, i);
        if (!(f < 0.0)) return std::numeric_limits<double>::infinity();
        v -= std::log(-f);
      } else {
        const VectorXd w = gather(y, c->idx);
        const Index k = w.size() - 1;
        const double e = w[k];
        const double d = e * e - (c->f * w.head(k) + c->g).squaredNorm();
        if (!(e > 0.0) || !(d > 0.0)) return std::numeric_limits<double>::infinity();
        v -= std::log(d);
      }
    }
    if (phase_one_) {
      const double f = -y[s_index()] - 1.0;
      if (!(f < 0.0)) return std::numeric_limits<double>::infinity();
      v -= std::log(-f);
      for (Index i = 0; i < center_.size(); ++i) {
        if (!touched_[static_cast<std::size_t>(i)]) continue;
        const double d = y[i] - center_[i];
        const double slack = radius_sq_ - d * d;
        if (!(slack > 0.0)) return std::numeric_limits<double>::infinity();
        v -= std::log(slack);
      }
    }
    return v;
  }

  void derivatives(const VectorXd & y, double t, VectorXd & grad, std::vector<Triplet> & hess) const
  {
    grad = VectorXd::Zero(n_);
    hess.clear();
    const auto add_block = [&](const std::vector<Index> & idx, const MatrixXd & h) {
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
          hess.emplace_back(idx[a], idx[b], h(static_cast<Index>(a), static_cast<Index>(b)));
        }
      }
    };

    if (phase_one_) {
      grad[s_index()] += t;
    } else {
      for (const auto & o : p_.objective) {
        const VectorXd w = gather(y, o.idx);
        VectorXd gl = o.p.size() > 0 ? o.p : VectorXd::Zero(w.size());
        if (has_quadratic_part(o)) {
          gl += o.p_mat * w;
          add_block(o.idx, t * o.p_mat);
        }
        for (std::size_t a = 0; a < o.idx.size(); ++a) grad[o.idx[a]] += t * gl[static_cast<Index>(a)];
      }
    }

    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto * c = terms_[i];
      if (c->form == Inequality::Form::Quadratic) {
        const auto & q = c->quad;
        std::vector<Index> idx = q.idx;
        const VectorXd w = gather(y, q.idx);
        const Index k = w.size();
        const Index kk = k + (phase_one_ ? 1 : 0);
        VectorXd gf = VectorXd::Zero(kk);
        MatrixXd hf = MatrixXd::Zero(kk, kk);
        if (q.p.size() > 0) gf.head(k) = q.p;
        if (has_quadratic_part(q)) {
          gf.head(k) += q.p_mat * w;
          hf.topLeftCorner(k, k) = q.p_mat;
        }
        if (phase_one_) {
          gf[k] = -weights_[i];
          idx.push_back(s_index());
        }
        const double f = relaxed(q.value(y), y, i);
        const double inv = 1.0 / -f;
        const VectorXd gl = gf * inv;
        for (Index a = 0; a < kk; ++a) grad[idx[static_cast<std::size_t>(a)]] += gl[a];
        add_block(idx, hf * inv + gl * gl.transpose());
      } else {
        const VectorXd w = gather(y, c->idx);
        const Index k = w.size() - 1;
        const double e = w[k];
        const VectorXd u = c->f * w.head(k) + c->g;
        const double d = e * e - u.squaredNorm();
        VectorXd gd(k + 1);
        gd.head(k) = -2.0 * c->f.transpose() * u;
        gd[k] = 2.0 * e;
        MatrixXd hd = MatrixXd::Zero(k + 1, k + 1);
        hd.topLeftCorner(k, k) = -2.0 * c->f.transpose() * c->f;
        hd(k, k) = 2.0;
        const VectorXd gl = -gd / d;
        for (Index a = 0; a <= k; ++a) grad[c->idx[static_cast<std::size_t>(a)]] += gl[a];
        add_block(c->idx, -hd / d + gl * gl.transpose());
      }
    }

    if (phase_one_) {
      const double f = -y[s_index()] - 1.0;
      grad[s_index()] += -1.0 / -f;
      hess.emplace_back(s_index(), s_index(), 1.0 / (f * f));
      for (Index i = 0; i < center_.size(); ++i) {
        if (!touched_[static_cast<std::size_t>(i)]) continue;
        const double d = y[i] - center_[i];
        const double slack = radius_sq_ - d * d;
        const double gi = 2.0 * d / slack;
        grad[i] += gi;
        hess.emplace_back(i, i, 2.0 / slack + gi * gi);
      }
    }
    // Isolated variables have zero gradient; a unit curvature keeps them still.
    for (Index i = 0; i < n_; ++i) {
      hess.emplace_back(i, i, isolated_[static_cast<std::size_t>(i)] ? 1.0 : 1e-12);
    }
  }

  /// Smallest s making every relaxed term hold at x, used to start phase one.
  double max_residual(const VectorXd & x) const
  {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < terms_.size(); ++i) worst = std::max(worst, terms_[i]->quad.value(x) / weights_[i]);
    return worst;
  }

private:
  double relaxed(double f, const VectorXd & y, std::size_t i) const
  {
    return phase_one_ ? f - weights_[i] * y[s_index()] : f;
  }

  const ConvexSubproblem & p_;
  bool phase_one_;
  Index n_;
  double theta_{0.0};
  std::vector<const Inequality *> terms_;
  std::vector<double> weights_;
  std::vector<char> touched_;
  std::vector<char> isolated_;
  VectorXd center_;
  double radius_sq_{0.0};
};

/// Equality rows as triplets plus right-hand side.
struct Equalities
{
  std::vector<Triplet> a;
  VectorXd b;
  Index rows{0};
  Index cols{0};
  SparseMatrix mat;

private:
  Eigen::SimplicialLDLT<SparseMatrix> gram_;
  bool gram_ok_{false};

public:

  explicit Equalities(const ConvexSubproblem & p) : cols(p.n_vars)
  {
    for (const auto & blk : p.equalities) rows += blk.a.rows();
    b.resize(rows);
    Index r0 = 0;
    for (const auto & blk : p.equalities) {
      for (Index i = 0; i < blk.a.rows(); ++i) {
        for (Index j = 0; j < blk.a.cols(); ++j) {
          if (blk.a(i, j) != 0.0) a.emplace_back(r0 + i, blk.idx[static_cast<std::size_t>(j)], blk.a(i, j));
        }
        b[r0 + i] = blk.b[i];
      }
      r0 += blk.a.rows();
    }
    if (rows > 0) {
      mat.resize(rows, cols);
      mat.setFromTriplets(a.begin(), a.end());
      const SparseMatrix gram = mat * mat.transpose();
      gram_.compute(gram);
      gram_ok_ = gram_.info() == Eigen::Success && (gram_.vectorD().array() > 1e-12).all();
    }
  }

  /// Moves `dx` (first `cols` entries) to the nearest point with A dx = rb.
  /// Newton directions from an ill-conditioned KKT system drift off the
  /// equality rows; the Gram matrix of A stays well conditioned.
  void restore(VectorXd & dx, const VectorXd & rb) const
  {
    if (rows == 0 || !gram_ok_) return;
    const VectorXd r = rb - mat * dx.head(cols);
    const VectorXd mult = gram_.solve(r);
    if (mult.allFinite()) dx.head(cols) += mat.transpose() * mult;
  }

  /// Residual level treated as satisfied, relative to the right-hand side.
  double tolerance() const { return 1e-9 * (1.0 + (rows > 0 ? b.lpNorm<Eigen::Infinity>() : 0.0)); }

  VectorXd residual(const VectorXd & x) const
  {
    VectorXd r = -b;
    for (const auto & t : a) r[t.row()] += t.value() * x[t.col()];
    return r;
  }
};

/// Solves [H A'; A 0][dx; nu] = [rx; rb] for a fixed sparsity pattern.
class KktSolver
{
public:
  KktSolver(Index n, const Equalities & eq) : n_(n), eq_(eq), k_(n + eq.rows, n + eq.rows) {}

  bool solve(const std::vector<Triplet> & hess, const VectorXd & rx, const VectorXd & rb, VectorXd & dx)
  {
    std::vector<Triplet> all = hess;
    all.reserve(hess.size() + 2 * eq_.a.size() + static_cast<std::size_t>(eq_.rows));
    for (const auto & t : eq_.a) {
      all.emplace_back(n_ + t.row(), t.col(), t.value());
      all.emplace_back(t.col(), n_ + t.row(), t.value());
    }
    // Explicit zeros keep every diagonal entry in the pattern.
    for (Index i = 0; i < n_ + eq_.rows; ++i) all.emplace_back(i, i, 0.0);
    k_.setFromTriplets(all.begin(), all.end());
    k_.makeCompressed();
    // Regularizing both diagonal blocks makes the matrix quasi-definite, so a
    // symmetric factorization without pivoting exists for any ordering.
    SparseMatrix reg = k_;
    reg.diagonal().head(n_).array() += kPrimalRegularization;
    reg.diagonal().tail(eq_.rows).array() -= kDualRegularization;
    if (!analyzed_) {
      ldlt_.analyzePattern(reg);
      analyzed_ = true;
    }
    ldlt_.factorize(reg);
    if (ldlt_.info() != Eigen::Success) return false;
    VectorXd rhs(n_ + eq_.rows);
    rhs << rx, rb;
    VectorXd sol = ldlt_.solve(rhs);
    if (!sol.allFinite()) return false;
    // Refining against the unregularized system keeps A dx = rb exact even
    // when the multipliers grow large.
    for (int sweep = 0; sweep < kRefinementSweeps; ++sweep) {
      const VectorXd r = rhs - k_ * sol;
      if (r.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + rhs.lpNorm<Eigen::Infinity>())) break;
      const VectorXd corr = ldlt_.solve(r);
      if (!corr.allFinite()) break;
      sol += corr;
    }
    dx = sol.head(n_);
    eq_.restore(dx, rb);
    return true;
  }

private:
  static constexpr double kPrimalRegularization = 1e-10;
  static constexpr double kDualRegularization = 1e-10;
  static constexpr int kRefinementSweeps = 6;

  Index n_;
  const Equalities & eq_;
  SparseMatrix k_;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
  bool analyzed_{false};
};

enum class Centering { Converged, Feasible, Stalled, Budget, Numerical };

struct NewtonBudget
{
  std::size_t used{0};
  std::size_t limit{0};
};

/// Damped Newton on the barrier at fixed t. In phase one it returns early
/// with Feasible as soon as s drops below -margin.
Centering center(
  const Barrier & bar, const Equalities & eq, KktSolver & kkt, VectorXd & y, double t,
  NewtonBudget & budget, bool phase_one, double margin)
{
  constexpr double kDecrementTol = 1e-10;
  constexpr double kArmijo = 0.01;
  VectorXd grad;
  std::vector<Triplet> hess;
  VectorXd dy;
  for (;;) {
    if (budget.used >= budget.limit) return Centering::Budget;
    ++budget.used;
    bar.derivatives(y, t, grad, hess);
    // Equality rows never involve s.
    const VectorXd rb = -eq.residual(y.head(y.size() - (phase_one ? 1 : 0)));
    if (!kkt.solve(hess, -grad, rb, dy)) return Centering::Numerical;
    const double slope = grad.dot(dy);
    const double decrement = -slope;
    const double v0 = bar.value(y, t);
    // Below the resolution of the barrier value no line search can confirm progress.
    const double resolution = std::max(kDecrementTol, 1e-14 * std::abs(v0));
    if (decrement * 0.5 <= resolution && rb.lpNorm<Eigen::Infinity>() <= eq.tolerance()) return Centering::Converged;

    double alpha = 1.0;
    int halvings = 0;
    VectorXd trial = y + dy;
    double v1 = bar.value(trial, t);
    while (!(v1 <= v0 + kArmijo * alpha * slope) && halvings < 60) {
      alpha *= 0.5;
      ++halvings;
      trial = y + alpha * dy;
      v1 = bar.value(trial, t);
    }
    if (halvings == 60 || !std::isfinite(v1)) {
      // No progress is possible at this precision; treat the point as centered.
      return std::isfinite(v0) ? Centering::Stalled : Centering::Numerical;
    }
    y = trial;
    if (phase_one && y[bar.s_index()] < -margin) return Centering::Feasible;
  }
}

}  // namespace

SolveResult solve_subproblem(const ConvexSubproblem & problem, const SolverOptions & options)
{
  problem.check_structure();
  SolveResult out;
  const Index n = problem.n_vars;
  const Equalities eq(problem);
  NewtonBudget budget{0, options.max_iters};

  // Start from the guess projected onto the equality constraints.
  VectorXd x = problem.initial_guess.size() == n ? problem.initial_guess : VectorXd::Zero(n);
  if (eq.rows > 0) {
    KktSolver proj(n, eq);
    std::vector<Triplet> eye;
    for (Index i = 0; i < n; ++i) eye.emplace_back(i, i, 1.0);
    VectorXd dx;
    if (!proj.solve(eye, VectorXd::Zero(n), -eq.residual(x), dx)) {
      out.note = "equality constraints are singular";
      out.x = x;
      return out;
    }
    x += dx;
    const double res = eq.residual(x).lpNorm<Eigen::Infinity>();
    if (res > 1e-7 * (1.0 + eq.b.lpNorm<Eigen::Infinity>())) {
      out.note = "equality constraints are inconsistent";
      out.equality_residual = res;
      out.x = x;
      return out;
    }
  }
  // Phase one.
  {
    Barrier bar(problem, true);
    bar.set_trust_region(x, 1e4 * (1.0 + x.lpNorm<Eigen::Infinity>()));
    bar.scale_relaxation(x);
    double s0 = bar.max_residual(x);
    if (!std::isfinite(s0) || s0 < -options.feasibility_margin * 10.0) {
      // Already strictly feasible (or no relaxed constraints at all).
    } else {
      VectorXd y(n + 1);
      y << x, std::max(s0, -0.5) + 1.0;
      KktSolver kkt(n + 1, eq);
      double t = 1.0;
      bool feasible = false;
      for (;;) {
        const auto c = center(bar, eq, kkt, y, t, budget, true, options.feasibility_margin);
        if (c == Centering::Feasible) {
          feasible = true;
          break;
        }
        if (c == Centering::Budget) {
          out.status = SolveStatus::IterationLimit;
          out.note = "iteration budget exhausted while searching for a feasible point";
          out.x = y.head(n);
          out.newton_steps = budget.used;
          return out;
        }
        if (c == Centering::Numerical) {
          out.note = "numerical failure while searching for a feasible point";
          out.x = y.head(n);
          out.newton_steps = budget.used;
          return out;
        }
        const double s = y[n];
        const double gap = bar.theta() / t;
        if (s - gap > 0.0) {
          out.note = "certified: no point satisfies every inequality";
          break;
        }
        if (gap < 1e-10) {
          out.note = "feasible set has no interior";
          break;
        }
        t *= options.barrier_growth;
      }
      out.newton_steps = budget.used;
      if (!feasible) {
        out.status = SolveStatus::Infeasible;
        out.x = y.head(n);
        return out;
      }
      x = y.head(n);
    }
  }

  // Cone bound variables start strictly inside their cones.
  for (const auto & c : problem.inequalities) {
    if (c.form != Inequality::Form::SecondOrderCone) continue;
    const VectorXd w = gather(x, c.idx);
    const Index k = w.size() - 1;
    const double need = (c.f * w.head(k) + c.g).norm() + 1.0;
    x[c.idx.back()] = std::max(x[c.idx.back()] > 0.0 ? x[c.idx.back()] : 0.0, need);
  }

  // Phase two.
  const Barrier bar(problem, false);
  KktSolver kkt(n, eq);
  double t = 1.0;
  for (;;) {
    const auto c = center(bar, eq, kkt, x, t, budget, false, 0.0);
    if (c == Centering::Budget) {
      out.status = SolveStatus::IterationLimit;
      out.note = "iteration budget exhausted while optimizing";
      break;
    }
    if (c == Centering::Numerical) {
      out.status = SolveStatus::IterationLimit;
      out.note = "numerical failure while optimizing";
      break;
    }
    const double gap = bar.theta() / t;
    const double f0 = problem.objective_value(x);
    out.gap = gap;
    if (gap <= options.tol * std::max(1.0, std::abs(f0))) {
      out.status = SolveStatus::Optimal;
      break;
    }
    t *= options.barrier_growth;
  }
  out.x = x;
  out.objective = problem.objective_value(x);
  out.equality_residual = eq.rows > 0 ? eq.residual(x).lpNorm<Eigen::Infinity>() : 0.0;
  out.newton_steps = budget.used;
  return out;
}

}  // namespace scplan::planner
