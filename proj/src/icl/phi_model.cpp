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

#include "scplan/icl/phi_model.hpp"

#include "icn_math.hpp"

#include <cmath>
#include <random>

namespace scplan::icl
{

std::string_view to_string(PhiVariant v)
{
  return v == PhiVariant::Quadratic ? "quadratic" : "icn";
}

std::string_view to_string(Activation a)
{
  return a == Activation::Relu ? "relu" : "softplus";
}

PhiVariant variant_from_string(std::string_view name)
{
  if (name == "quadratic") return PhiVariant::Quadratic;
  if (name == "icn") return PhiVariant::Icn;
  throw core::InvalidInput("unknown phi variant: " + std::string(name));
}

Activation activation_from_string(std::string_view name)
{
  if (name == "relu") return Activation::Relu;
  if (name == "softplus") return Activation::Softplus;
  throw core::InvalidInput("unregistered activation: " + std::string(name));
}

std::string_view to_string(ConvexityReport::Mode mode)
{
  switch (mode) {
    case ConvexityReport::Mode::Analytic:
      return "analytic";
    case ConvexityReport::Mode::Structural:
      return "structural";
    case ConvexityReport::Mode::Empirical:
      return "empirical";
  }
  return "analytic";
}

Normalizer Normalizer::identity(std::size_t dim, double half_width)
{
  const auto n = static_cast<Eigen::Index>(dim);
  return {VectorXd::Zero(n), VectorXd::Ones(n), VectorXd::Constant(n, -half_width),
          VectorXd::Constant(n, half_width)};
}

Normalizer Normalizer::fit(const std::vector<VectorXd> & samples)
{
  if (samples.empty()) throw core::InvalidInput("normalizer: no samples");
  const auto dim = samples.front().size();
  VectorXd mean = VectorXd::Zero(dim);
  for (const auto & s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  VectorXd var = VectorXd::Zero(dim);
  for (const auto & s : samples) var += (s - mean).cwiseAbs2();
  var /= static_cast<double>(samples.size());
  VectorXd scale(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double sd = std::sqrt(var[i]);
    scale[i] = sd > 1e-8 ? sd : 1.0;
  }
  Normalizer out{mean, scale, VectorXd::Zero(dim), VectorXd::Zero(dim)};
  out.lower = out.upper = out.apply(samples.front());
  for (const auto & s : samples) {
    const VectorXd z = out.apply(s);
    out.lower = out.lower.cwiseMin(z);
    out.upper = out.upper.cwiseMax(z);
  }
  return out;
}

VectorXd Normalizer::apply(const VectorXd & raw) const
{
  if (raw.size() != mean.size()) throw core::InvalidInput("normalizer: dimension mismatch");
  return (raw - mean).cwiseQuotient(scale);
}

void TrainConfig::validate() const
{
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw core::InvalidInput("train config: learning_rate must be positive");
  }
  if (epochs < 1) throw core::InvalidInput("train config: epochs must be at least 1");
  if (batch_size < 1) throw core::InvalidInput("train config: batch_size must be at least 1");
  if (negatives_per_positive < 1) {
    throw core::InvalidInput("train config: negatives_per_positive must be at least 1");
  }
  if (!(perturbation_scale > 0.0)) {
    throw core::InvalidInput("train config: perturbation_scale must be positive");
  }
  if (!(margin > 0.0)) throw core::InvalidInput("train config: margin must be positive");
  if (!(jump_probability >= 0.0 && jump_probability <= 1.0)) {
    throw core::InvalidInput("train config: jump_probability outside [0, 1]");
  }
  if (icn_widths.empty() || icn_widths.back() != 1) {
    throw core::InvalidInput("train config: network widths must end in 1");
  }
  if (icn_dropout.size() + 1 != icn_widths.size()) {
    throw core::InvalidInput("train config: one dropout rate per hidden layer");
  }
  for (double p : icn_dropout) {
    if (!(p >= 0.0 && p < 1.0)) throw core::InvalidInput("train config: dropout outside [0, 1)");
  }
}

PhiVariant PhiModel::variant() const
{
  return std::holds_alternative<QuadraticParams>(params) ? PhiVariant::Quadratic : PhiVariant::Icn;
}

std::size_t PhiModel::input_dim() const
{
  return variant() == PhiVariant::Quadratic ? ingest::kTransitionDim : kIcnInputDim;
}

const QuadraticParams & PhiModel::quadratic() const
{
  if (const auto * q = std::get_if<QuadraticParams>(&params)) return *q;
  throw UnsupportedVariant("model is not the quadratic variant");
}

const IcnParams & PhiModel::icn() const
{
  if (const auto * n = std::get_if<IcnParams>(&params)) return *n;
  throw UnsupportedVariant("model is not the network variant");
}

PhiModel make_quadratic(const MatrixXd & q, const VectorXd & center, double offset)
{
  if (q.rows() != q.cols() || q.rows() != center.size()) {
    throw core::InvalidInput("make_quadratic: shape mismatch");
  }
  PhiModel m;
  m.params = QuadraticParams{q, center, offset};
  m.normalizer = Normalizer::identity(static_cast<std::size_t>(q.rows()));
  return m;
}

PhiModel make_icn(
  const Normalizer & normalizer, const std::vector<std::size_t> & widths,
  const std::vector<double> & dropout, Activation activation, std::uint64_t seed)
{
  const auto input = normalizer.mean.size();
  std::mt19937_64 rng(seed);
  const auto xavier = [&](Eigen::Index rows, Eigen::Index cols) {
    const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> u(-bound, bound);
    MatrixXd w(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) w(i, j) = u(rng);
    }
    return w;
  };

  IcnParams net;
  net.activation = activation;
  net.dropout = dropout;
  Eigen::Index prev = 0;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    const auto out = static_cast<Eigen::Index>(widths[k]);
    IcnLayer layer;
    layer.hidden = k == 0 ? MatrixXd(out, 0) : MatrixXd(xavier(out, prev).cwiseAbs());
    layer.skip = xavier(out, input);
    layer.bias = VectorXd::Zero(out);
    net.layers.push_back(std::move(layer));
    prev = out;
  }
  PhiModel m;
  m.params = std::move(net);
  m.normalizer = normalizer;
  return m;
}

VectorXd model_input(
  const PhiModel & model, const core::State & s_t, const core::State & s_next,
  const ingest::FeatureVector & context)
{
  const auto tv = ingest::transition_vector(s_t, s_next);
  VectorXd raw(static_cast<Eigen::Index>(model.input_dim()));
  for (std::size_t i = 0; i < tv.size(); ++i) raw[static_cast<Eigen::Index>(i)] = tv[i];
  if (model.uses_context()) {
    for (std::size_t i = 0; i < context.size(); ++i) {
      raw[static_cast<Eigen::Index>(tv.size() + i)] = context[i];
    }
  }
  return raw;
}

double phi_normalized(const PhiModel & model, const VectorXd & z)
{
  if (const auto * q = std::get_if<QuadraticParams>(&model.params)) {
    const VectorXd r = z - q->center;
    return r.dot(q->q * r) + std::max(q->offset, 0.0);
  }
  const MatrixXd x = z;
  return detail::icn_forward(model.icn(), x, nullptr, nullptr)(0);
}

VectorXd phi_gradient_normalized(const PhiModel & model, const VectorXd & z)
{
  if (const auto * q = std::get_if<QuadraticParams>(&model.params)) {
    return (q->q + q->q.transpose()) * (z - q->center);
  }
  const auto & net = model.icn();
  const MatrixXd x = z;
  detail::IcnCache cache;
  detail::icn_forward(net, x, &cache, nullptr);
  auto grad = detail::zeros_like(net);
  MatrixXd dx;
  detail::icn_backward(net, x, cache, Eigen::RowVectorXd::Ones(1), grad, &dx);
  return dx.col(0);
}

double phi_raw(const PhiModel & model, const VectorXd & raw)
{
  return phi_normalized(model, model.normalizer.apply(raw));
}

double phi_eval(
  const PhiModel & model, const core::State & s_t, const core::State & s_next,
  const ingest::FeatureVector & context)
{
  if (!s_t.finite() || !s_next.finite()) throw core::InvalidInput("phi_eval: non-finite state");
  if (model.uses_context()) {
    for (double v : context) {
      if (!std::isfinite(v)) throw core::InvalidInput("phi_eval: non-finite context");
    }
  }
  return phi_raw(model, model_input(model, s_t, s_next, context));
}

int reward_indicator(
  const PhiModel & model, const core::State & s_t, const core::State & s_next,
  const ingest::FeatureVector & context, double epsilon)
{
  if (!(epsilon > 0.0)) throw core::InvalidInput("reward_indicator: epsilon must be positive");
  return phi_eval(model, s_t, s_next, context) <= epsilon ? 1 : 0;
}

PhiModel project_nonneg_weights(PhiModel model)
{
  auto * net = std::get_if<IcnParams>(&model.params);
  if (net == nullptr) throw UnsupportedVariant("project_nonneg_weights: network variant only");
  for (auto & layer : net->layers) layer.hidden = layer.hidden.cwiseMax(0.0);
  return model;
}

namespace detail
{

double softplus(double x)
{
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x)
{
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace
{

void activate(Activation act, const MatrixXd & pre, MatrixXd & post)
{
  post.resize(pre.rows(), pre.cols());
  if (act == Activation::Relu) {
    post = pre.cwiseMax(0.0);
  } else {
    post = pre.unaryExpr([](double v) { return softplus(v); });
  }
}

MatrixXd activation_slope(Activation act, const MatrixXd & pre)
{
  if (act == Activation::Relu) {
    return pre.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
  }
  return pre.unaryExpr([](double v) { return sigmoid(v); });
}

}  // namespace

Eigen::RowVectorXd icn_forward(
  const IcnParams & net, const MatrixXd & x, IcnCache * cache, std::mt19937_64 * rng)
{
  const std::size_t n_layers = net.layers.size();
  if (cache != nullptr) {
    cache->pre.assign(n_layers, MatrixXd());
    cache->post.assign(n_layers - 1, MatrixXd());
    cache->masks.assign(rng != nullptr ? n_layers - 1 : 0, MatrixXd());
  }
  MatrixXd current;
  for (std::size_t k = 0; k < n_layers; ++k) {
    const auto & layer = net.layers[k];
    MatrixXd pre = layer.skip * x;
    if (k > 0) pre.noalias() += layer.hidden * current;
    pre.colwise() += layer.bias;
    if (k + 1 == n_layers) {
      Eigen::RowVectorXd phi = pre.row(0).unaryExpr([](double v) { return softplus(v); });
      if (cache != nullptr) cache->pre[k] = std::move(pre);
      return phi;
    }
    MatrixXd post;
    activate(net.activation, pre, post);
    if (rng != nullptr) {
      const double p = k < net.dropout.size() ? net.dropout[k] : 0.0;
      MatrixXd mask(post.rows(), post.cols());
      const double keep = 1.0 - p;
      for (Eigen::Index j = 0; j < mask.cols(); ++j) {
        for (Eigen::Index i = 0; i < mask.rows(); ++i) {
          const double u = static_cast<double>((*rng)() >> 11) * 0x1.0p-53;
          mask(i, j) = u < keep ? 1.0 / keep : 0.0;
        }
      }
      post = post.cwiseProduct(mask);
      if (cache != nullptr) cache->masks[k] = std::move(mask);
    }
    if (cache != nullptr) {
      cache->pre[k] = std::move(pre);
      cache->post[k] = post;
    }
    current = std::move(post);
  }
  return Eigen::RowVectorXd();
}

void icn_backward(
  const IcnParams & net, const MatrixXd & x, const IcnCache & cache,
  const Eigen::RowVectorXd & dphi, IcnParams & grad, MatrixXd * dx)
{
  const std::size_t n_layers = net.layers.size();
  // Gradient with respect to the pre-activation of the current layer.
  MatrixXd delta = dphi.cwiseProduct(
    cache.pre[n_layers - 1].row(0).unaryExpr([](double v) { return sigmoid(v); }));
  if (dx != nullptr) *dx = MatrixXd::Zero(x.rows(), x.cols());
  for (std::size_t k = n_layers; k-- > 0;) {
    const auto & layer = net.layers[k];
    auto & g = grad.layers[k];
    g.skip.noalias() += delta * x.transpose();
    g.bias += delta.rowwise().sum();
    if (dx != nullptr) dx->noalias() += layer.skip.transpose() * delta;
    if (k == 0) break;
    g.hidden.noalias() += delta * cache.post[k - 1].transpose();
    MatrixXd back = layer.hidden.transpose() * delta;
    if (!cache.masks.empty()) back = back.cwiseProduct(cache.masks[k - 1]);
    delta = back.cwiseProduct(activation_slope(net.activation, cache.pre[k - 1]));
  }
}

IcnParams zeros_like(const IcnParams & net)
{
  IcnParams out = net;
  for (auto & layer : out.layers) {
    layer.hidden.setZero();
    layer.skip.setZero();
    layer.bias.setZero();
  }
  return out;
}

}  // namespace detail
}  // namespace scplan::icl
