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

#ifndef SCPLAN__ICL__PHI_MODEL_HPP_
#define SCPLAN__ICL__PHI_MODEL_HPP_

#include "scplan/core/types.hpp"
#include "scplan/ingest/features.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scplan::icl
{

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Raised when an operation does not apply to the model's variant.
class UnsupportedVariant : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

enum class PhiVariant { Quadratic, Icn };
enum class Activation { Relu, Softplus };

std::string_view to_string(PhiVariant v);
std::string_view to_string(Activation a);
PhiVariant variant_from_string(std::string_view name);
Activation activation_from_string(std::string_view name);

/// Per-channel standardization fitted on the training split. `lower` and
/// `upper` bound the standardized training inputs.
struct Normalizer
{
  VectorXd mean;
  VectorXd scale;
  VectorXd lower;
  VectorXd upper;

  static Normalizer identity(std::size_t dim, double half_width = 1.0);
  static Normalizer fit(const std::vector<VectorXd> & samples);
  VectorXd apply(const VectorXd & raw) const;
};

/// phi(z) = (z - center)^T q (z - center) + max(offset, 0).
struct QuadraticParams
{
  MatrixXd q;
  VectorXd center;
  double offset{0.0};
};

/// One layer of the input-convex network. `hidden` maps the previous layer's
/// activations and must stay elementwise nonnegative; `skip` maps the network
/// input and is unconstrained. The first layer has an empty `hidden`.
struct IcnLayer
{
  MatrixXd hidden;
  MatrixXd skip;
  VectorXd bias;
};

struct IcnParams
{
  std::vector<IcnLayer> layers;
  Activation activation{Activation::Relu};
  /// Dropout rate after each hidden layer; used in training only.
  std::vector<double> dropout;
};

struct ConvexityReport
{
  enum class Mode { Analytic, Structural, Empirical };
  Mode mode{Mode::Analytic};
  bool passed{false};
  std::size_t checks_run{0};
  double worst_violation{0.0};
};

std::string_view to_string(ConvexityReport::Mode mode);

struct TrainConfig
{
  double learning_rate{0.001};
  std::size_t epochs{200};
  std::size_t batch_size{64};
  std::size_t negatives_per_positive{4};
  double perturbation_scale{1.0};
  double margin{1.0};
  /// Share of negatives that also receive a position jump breaking the dynamics.
  double jump_probability{0.25};
  std::uint64_t seed{0};
  /// Quadratic only: fit the closed-form conditional-Gaussian model instead of
  /// running the contrastive optimizer.
  bool log_linear_proxy{false};
  double proxy_ridge{1e-3};
  std::vector<std::size_t> icn_widths{128, 64, 32, 1};
  std::vector<double> icn_dropout{0.3, 0.2, 0.1};
  Activation icn_activation{Activation::Relu};
  /// Sampling interval of the training data; 0 leaves it unchecked.
  double dt{0.0};

  void validate() const;
};

/// Learned soft-constraint cost. The quadratic variant reads the ten-channel
/// transition vector; the network variant reads it followed by the 23 context
/// features.
struct PhiModel
{
  std::variant<QuadraticParams, IcnParams> params;
  Normalizer normalizer;
  double dt{0.0};
  double epsilon{0.05};
  TrainConfig train_config{};
  std::vector<ConvexityReport> reports;
  std::vector<double> epoch_losses;

  PhiVariant variant() const;
  bool uses_context() const { return variant() == PhiVariant::Icn; }
  std::size_t input_dim() const;

  const QuadraticParams & quadratic() const;
  const IcnParams & icn() const;
};

constexpr std::size_t kIcnInputDim = ingest::kTransitionDim + ingest::kFeatureDim;

/// Quadratic model over standardized channels with an identity normalizer.
PhiModel make_quadratic(const MatrixXd & q, const VectorXd & center, double offset);

/// Network with Xavier-uniform weights, constrained weights made nonnegative
/// by taking magnitudes, and zero biases.
PhiModel make_icn(
  const Normalizer & normalizer, const std::vector<std::size_t> & widths,
  const std::vector<double> & dropout, Activation activation, std::uint64_t seed);

/// Unnormalized model input for a transition.
VectorXd model_input(
  const PhiModel & model, const core::State & s_t, const core::State & s_next,
  const ingest::FeatureVector & context);

double phi_normalized(const PhiModel & model, const VectorXd & z);
VectorXd phi_gradient_normalized(const PhiModel & model, const VectorXd & z);
double phi_raw(const PhiModel & model, const VectorXd & raw);

/// Cost of one transition; throws InvalidInput on non-finite input.
double phi_eval(
  const PhiModel & model, const core::State & s_t, const core::State & s_next,
  const ingest::FeatureVector & context);

/// 1 iff phi_eval <= epsilon.
int reward_indicator(
  const PhiModel & model, const core::State & s_t, const core::State & s_next,
  const ingest::FeatureVector & context, double epsilon);

/// Clamps every constrained network weight at zero.
PhiModel project_nonneg_weights(PhiModel model);

}  // namespace scplan::icl

#endif  // SCPLAN__ICL__PHI_MODEL_HPP_
