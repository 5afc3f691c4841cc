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

#ifndef SCPLAN__ICL__CONVEXITY_HPP_
#define SCPLAN__ICL__CONVEXITY_HPP_

#include "scplan/icl/phi_model.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace scplan::icl
{

/// Smallest eigenvalue accepted as PSD.
constexpr double kPsdTolerance = 1e-9;

/// Eigenvalue test of the quadratic form. worst_violation is -lambda_min - 1e-9.
/// Throws UnsupportedVariant for the network variant.
ConvexityReport verify_convexity_analytic(const PhiModel & model);

/// Sign test of every constrained network weight. worst_violation is the
/// largest negated entry, so a single weight of -1e-3 reports 1e-3.
ConvexityReport verify_convexity_structural(const PhiModel & model);

struct EmpiricalOptions
{
  std::size_t n_pairs{10000};
  std::uint64_t seed{0};
  double tol{1e-9};
  /// Uses this interpolation weight for every pair instead of sampling it.
  std::optional<double> fixed_lambda;
};

/// Midpoint test with points drawn uniformly from the model's standardized
/// training box. worst_violation is the largest
/// phi(mid) - lambda phi(z1) - (1 - lambda) phi(z2), minus tol.
ConvexityReport verify_convexity_empirical(const PhiModel & model, const EmpiricalOptions & options);

/// Same test for an arbitrary function over the box [lower, upper].
ConvexityReport verify_convexity_empirical(
  const std::function<double(const VectorXd &)> & f, const VectorXd & lower,
  const VectorXd & upper, const EmpiricalOptions & options);

/// Every verifier that applies to the model's variant.
std::vector<ConvexityReport> verify_all(const PhiModel & model, const EmpiricalOptions & options);

}  // namespace scplan::icl

#endif  // SCPLAN__ICL__CONVEXITY_HPP_
