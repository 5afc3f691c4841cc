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

#ifndef SCPLAN__ICL__TRAINING_HPP_
#define SCPLAN__ICL__TRAINING_HPP_

#include "scplan/icl/phi_model.hpp"
#include "scplan/ingest/dataset.hpp"

#include <functional>
#include <random>
#include <stdexcept>

namespace scplan::icl
{

/// Raised when the loss stops being finite.
class TrainingError : public std::runtime_error
{
public:
  TrainingError(const std::string & what, std::size_t epoch)
  : std::runtime_error(what), epoch_(epoch)
  {
  }
  std::size_t epoch() const { return epoch_; }

private:
  std::size_t epoch_;
};

/// Called after every optimizer step with the projected model.
using StepObserver = std::function<void(const PhiModel &, std::size_t step)>;

/// Contrastive training on the train split: minimizes the mean cost of expert
/// transitions plus a hinge pushing perturbed transitions above the margin.
/// Deterministic given config.seed.
PhiModel train_phi(
  const ingest::TransitionDataset & ds, const TrainConfig & config, PhiVariant variant,
  const StepObserver & observer = {});

/// Standardized inputs of every transition in `split`.
std::vector<VectorXd> standardized_inputs(
  const PhiModel & model, const ingest::TransitionDataset & ds, ingest::Split split);

/// Perturbs the next-state channels of a standardized input the way training
/// does: Gaussian noise on velocity and acceleration, and with probability
/// `jump_probability` a displacement jump that breaks the dynamics.
VectorXd perturb(const VectorXd & z, const TrainConfig & config, std::mt19937_64 & rng);

/// Mean contrastive loss of `model` on the given expert/negative inputs.
double contrastive_loss(
  const PhiModel & model, const std::vector<VectorXd> & experts,
  const std::vector<VectorXd> & negatives, double margin);

}  // namespace scplan::icl

#endif  // SCPLAN__ICL__TRAINING_HPP_
