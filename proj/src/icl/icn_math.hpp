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

#ifndef SCPLAN__ICL__ICN_MATH_HPP_
#define SCPLAN__ICL__ICN_MATH_HPP_

#include "scplan/icl/phi_model.hpp"

#include <random>
#include <vector>

namespace scplan::icl::detail
{

/// Batched forward state; column j belongs to sample j.
struct IcnCache
{
  std::vector<MatrixXd> pre;    // pre-activation per layer, last is the output logit
  std::vector<MatrixXd> post;   // post-activation (after dropout) per hidden layer
  std::vector<MatrixXd> masks;  // dropout multipliers, empty when not training
};

double softplus(double x);
double sigmoid(double x);

/// phi for every column of `x` (standardized inputs). Passing `rng` enables dropout.
Eigen::RowVectorXd icn_forward(
  const IcnParams & net, const MatrixXd & x, IcnCache * cache, std::mt19937_64 * rng);

/// Accumulates parameter gradients of sum_j dphi_j * phi_j into `grad`, whose
/// shapes must match `net`. Optionally writes the input gradient.
void icn_backward(
  const IcnParams & net, const MatrixXd & x, const IcnCache & cache,
  const Eigen::RowVectorXd & dphi, IcnParams & grad, MatrixXd * dx);

IcnParams zeros_like(const IcnParams & net);

}  // namespace scplan::icl::detail

#endif  // SCPLAN__ICL__ICN_MATH_HPP_
