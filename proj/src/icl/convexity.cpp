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

#include "scplan/icl/convexity.hpp"

#include <Eigen/Eigenvalues>

#include <limits>
#include <random>

namespace scplan::icl
{

ConvexityReport verify_convexity_analytic(const PhiModel & model)
{
  const auto * q = std::get_if<QuadraticParams>(&model.params);
  if (q == nullptr) {
    throw UnsupportedVariant("analytic convexity check needs the quadratic variant; use the structural check");
  }
  ConvexityReport r;
  r.mode = ConvexityReport::Mode::Analytic;
  r.checks_run = 1;
  const MatrixXd sym = 0.5 * (q->q + q->q.transpose());
  const double lambda_min =
    sym.size() == 0 ? 0.0
                    : Eigen::SelfAdjointEigenSolver<MatrixXd>(sym, Eigen::EigenvaluesOnly)
                        .eigenvalues()
                        .minCoeff();
  r.worst_violation = -lambda_min - kPsdTolerance;
  r.passed = r.worst_violation <= 0.0;
  return r;
}

ConvexityReport verify_convexity_structural(const PhiModel & model)
{
  const auto * net = std::get_if<IcnParams>(&model.params);
  if (net == nullptr) throw UnsupportedVariant("structural convexity check needs the network variant");
  ConvexityReport r;
  r.mode = ConvexityReport::Mode::Structural;
  r.worst_violation = -std::numeric_limits<double>::infinity();
  for (const auto & layer : net->layers) {
    r.checks_run += static_cast<std::size_t>(layer.hidden.size());
    if (layer.hidden.size() > 0) r.worst_violation = std::max(r.worst_violation, -layer.hidden.minCoeff());
  }
  // relu and softplus are the only registered activations; both qualify.
  if (r.checks_run == 0) r.worst_violation = 0.0;
  r.passed = r.worst_violation <= 0.0;
  return r;
}

ConvexityReport verify_convexity_empirical(
  const std::function<double(const VectorXd &)> & f, const VectorXd & lower,
  const VectorXd & upper, const EmpiricalOptions & options)
{
  if (options.n_pairs == 0) throw core::InvalidInput("empirical convexity check: n_pairs must be >= 1");
  if (lower.size() != upper.size()) throw core::InvalidInput("empirical convexity check: box mismatch");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto sample = [&] {
    VectorXd z(lower.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = lower[i] + (upper[i] - lower[i]) * unit(rng);
    return z;
  };

  ConvexityReport r;
  r.mode = ConvexityReport::Mode::Empirical;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < options.n_pairs; ++k) {
    const VectorXd z1 = sample();
    const VectorXd z2 = sample();
    const double lambda = options.fixed_lambda ? *options.fixed_lambda : unit(rng);
    const VectorXd mid = lambda * z1 + (1.0 - lambda) * z2;
    const double gap = f(mid) - lambda * f(z1) - (1.0 - lambda) * f(z2);
    worst = std::max(worst, gap);
    ++r.checks_run;
  }
  r.worst_violation = worst - options.tol;
  r.passed = r.worst_violation <= 0.0;
  return r;
}

ConvexityReport verify_convexity_empirical(const PhiModel & model, const EmpiricalOptions & options)
{
  return verify_convexity_empirical(
    [&model](const VectorXd & z) { return phi_normalized(model, z); }, model.normalizer.lower,
    model.normalizer.upper, options);
}

std::vector<ConvexityReport> verify_all(const PhiModel & model, const EmpiricalOptions & options)
{
  std::vector<ConvexityReport> out;
  if (model.variant() == PhiVariant::Quadratic) {
    out.push_back(verify_convexity_analytic(model));
  } else {
    out.push_back(verify_convexity_structural(model));
  }
  out.push_back(verify_convexity_empirical(model, options));
  return out;
}

}  // namespace scplan::icl
