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

#include "scplan/icl/training.hpp"

#include "icn_math.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <numeric>

namespace scplan::icl
{
namespace
{

// Channel layout of the transition vector.
constexpr std::array<Eigen::Index, 2> kStepChannels{0, 1};
constexpr std::array<Eigen::Index, 4> kNextChannels{6, 7, 8, 9};
constexpr std::array<Eigen::Index, 4> kSourceChannels{2, 3, 4, 5};
constexpr std::array<Eigen::Index, 6> kOutcomeChannels{0, 1, 6, 7, 8, 9};

/// Adam over a flat parameter vector.
class Adam
{
public:
  Adam(Eigen::Index n, double lr) : m_(VectorXd::Zero(n)), v_(VectorXd::Zero(n)), lr_(lr) {}

  void step(VectorXd & theta, const VectorXd & grad)
  {
    constexpr double kBeta1 = 0.9;
    constexpr double kBeta2 = 0.999;
    constexpr double kEps = 1e-8;
    ++t_;
    m_ = kBeta1 * m_ + (1.0 - kBeta1) * grad;
    v_ = kBeta2 * v_ + (1.0 - kBeta2) * grad.cwiseAbs2();
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    theta.array() -= lr_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + kEps);
  }

private:
  VectorXd m_;
  VectorXd v_;
  double lr_;
  long t_{0};
};

VectorXd pack(const QuadraticParams & p)
{
  const auto d = p.center.size();
  VectorXd out(d * d + d + 1);
  out.head(d * d) = Eigen::Map<const VectorXd>(p.q.data(), d * d);
  out.segment(d * d, d) = p.center;
  out[d * d + d] = p.offset;
  return out;
}

void unpack(const VectorXd & theta, QuadraticParams & p)
{
  const auto d = p.center.size();
  p.q = Eigen::Map<const MatrixXd>(theta.data(), d, d);
  p.center = theta.segment(d * d, d);
  p.offset = theta[d * d + d];
}

/// Symmetrizes and clips negative eigenvalues: the Frobenius projection onto the PSD cone.
MatrixXd project_psd(const MatrixXd & q)
{
  const MatrixXd sym = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym);
  const VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
  MatrixXd out = eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

Eigen::Index count_params(const IcnParams & net)
{
  Eigen::Index n = 0;
  for (const auto & l : net.layers) n += l.hidden.size() + l.skip.size() + l.bias.size();
  return n;
}

VectorXd pack(const IcnParams & net)
{
  VectorXd out(count_params(net));
  Eigen::Index at = 0;
  for (const auto & l : net.layers) {
    for (const MatrixXd * m : {&l.hidden, &l.skip}) {
      out.segment(at, m->size()) = Eigen::Map<const VectorXd>(m->data(), m->size());
      at += m->size();
    }
    out.segment(at, l.bias.size()) = l.bias;
    at += l.bias.size();
  }
  return out;
}

void unpack(const VectorXd & theta, IcnParams & net)
{
  Eigen::Index at = 0;
  for (auto & l : net.layers) {
    for (MatrixXd * m : {&l.hidden, &l.skip}) {
      *m = Eigen::Map<const MatrixXd>(theta.data() + at, m->rows(), m->cols());
      at += m->size();
    }
    l.bias = theta.segment(at, l.bias.size());
    at += l.bias.size();
  }
}

MatrixXd as_columns(const std::vector<VectorXd> & zs)
{
  MatrixXd out(zs.front().size(), static_cast<Eigen::Index>(zs.size()));
  for (std::size_t j = 0; j < zs.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = zs[j];
  return out;
}

Eigen::RowVectorXd quadratic_batch(const QuadraticParams & p, const MatrixXd & z, MatrixXd & centered)
{
  centered = z.colwise() - p.center;
  return (centered.cwiseProduct(p.q * centered)).colwise().sum().array() +
         std::max(p.offset, 0.0);
}

/// Weights of the loss in phi: +1/N for experts, -1/M for active negatives.
Eigen::RowVectorXd loss_weights(
  const Eigen::RowVectorXd & phi, Eigen::Index n_expert, double margin, double & loss)
{
  const Eigen::Index n_neg = phi.size() - n_expert;
  Eigen::RowVectorXd w(phi.size());
  loss = 0.0;
  for (Eigen::Index j = 0; j < n_expert; ++j) {
    w[j] = 1.0 / static_cast<double>(n_expert);
    loss += phi[j] / static_cast<double>(n_expert);
  }
  for (Eigen::Index j = n_expert; j < phi.size(); ++j) {
    const double gap = margin - phi[j];
    w[j] = gap > 0.0 ? -1.0 / static_cast<double>(n_neg) : 0.0;
    if (gap > 0.0) loss += gap / static_cast<double>(n_neg);
  }
  return w;
}

/// Closed-form conditional Gaussian of the outcome channels given the source
/// channels; phi is its negative log-density up to a constant.
QuadraticParams log_linear_proxy(const std::vector<VectorXd> & zs, double ridge)
{
  const auto n = static_cast<Eigen::Index>(zs.size());
  MatrixXd x(kSourceChannels.size() + 1, n);
  MatrixXd y(kOutcomeChannels.size(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < kSourceChannels.size(); ++i) x(i, j) = zs[j][kSourceChannels[i]];
    x(kSourceChannels.size(), j) = 1.0;
    for (std::size_t i = 0; i < kOutcomeChannels.size(); ++i) y(i, j) = zs[j][kOutcomeChannels[i]];
  }
  const MatrixXd gram = x * x.transpose() + ridge * MatrixXd::Identity(x.rows(), x.rows());
  const MatrixXd coef = gram.ldlt().solve(x * y.transpose()).transpose();
  const MatrixXd resid = y - coef * x;
  const MatrixXd cov = resid * resid.transpose() / static_cast<double>(n) +
                       ridge * MatrixXd::Identity(y.rows(), y.rows());

  const Eigen::Index d = static_cast<Eigen::Index>(ingest::kTransitionDim);
  MatrixXd r = MatrixXd::Zero(y.rows(), d);
  VectorXd center = VectorXd::Zero(d);
  for (std::size_t i = 0; i < kOutcomeChannels.size(); ++i) {
    r(i, kOutcomeChannels[i]) = 1.0;
    center[kOutcomeChannels[i]] = coef(i, kSourceChannels.size());
  }
  for (std::size_t i = 0; i < kOutcomeChannels.size(); ++i) {
    for (std::size_t k = 0; k < kSourceChannels.size(); ++k) r(i, kSourceChannels[k]) = -coef(i, k);
  }
  const MatrixXd precision = cov.ldlt().solve(MatrixXd::Identity(y.rows(), y.rows()));
  QuadraticParams p;
  p.q = project_psd(0.5 * r.transpose() * precision * r);
  p.center = center;
  p.offset = 0.0;
  return p;
}

}  // namespace

std::vector<VectorXd> standardized_inputs(
  const PhiModel & model, const ingest::TransitionDataset & ds, ingest::Split split)
{
  std::vector<VectorXd> out;
  for (const auto * t : ds.of_split(split)) {
    out.push_back(model.normalizer.apply(model_input(model, t->s_t, t->s_next, t->features)));
  }
  return out;
}

VectorXd perturb(const VectorXd & z, const TrainConfig & config, std::mt19937_64 & rng)
{
  std::normal_distribution<double> noise(0.0, config.perturbation_scale);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  VectorXd out = z;
  for (auto i : kNextChannels) out[i] += noise(rng);
  if (coin(rng) < config.jump_probability) {
    for (auto i : kStepChannels) out[i] += 3.0 * noise(rng);
  }
  return out;
}

double contrastive_loss(
  const PhiModel & model, const std::vector<VectorXd> & experts,
  const std::vector<VectorXd> & negatives, double margin)
{
  double pos = 0.0;
  for (const auto & z : experts) pos += phi_normalized(model, z);
  double neg = 0.0;
  for (const auto & z : negatives) neg += std::max(0.0, margin - phi_normalized(model, z));
  return pos / static_cast<double>(experts.size()) + neg / static_cast<double>(negatives.size());
}

PhiModel train_phi(
  const ingest::TransitionDataset & ds, const TrainConfig & config, PhiVariant variant,
  const StepObserver & observer)
{
  config.validate();
  const auto train = ds.of_split(ingest::Split::Train);
  if (train.empty()) throw core::InvalidInput("train_phi: training split is empty");

  // Raw inputs decide the normalizer; a throwaway model supplies the layout.
  PhiModel layout;
  if (variant == PhiVariant::Quadratic) {
    layout.params = QuadraticParams{};
  } else {
    layout.params = IcnParams{};
  }
  std::vector<VectorXd> raw;
  raw.reserve(train.size());
  for (const auto * t : train) raw.push_back(model_input(layout, t->s_t, t->s_next, t->features));
  const Normalizer normalizer = Normalizer::fit(raw);
  std::vector<VectorXd> experts;
  experts.reserve(raw.size());
  for (const auto & r : raw) experts.push_back(normalizer.apply(r));

  PhiModel model;
  if (variant == PhiVariant::Quadratic) {
    const auto d = static_cast<Eigen::Index>(ingest::kTransitionDim);
    model.params = QuadraticParams{MatrixXd::Zero(d, d), VectorXd::Zero(d), 0.0};
    model.normalizer = normalizer;
  } else {
    if (config.log_linear_proxy) {
      throw core::InvalidInput("train_phi: the log-linear proxy applies to the quadratic variant");
    }
    model = make_icn(
      normalizer, config.icn_widths, config.icn_dropout, config.icn_activation, config.seed);
  }
  model.dt = config.dt;
  model.train_config = config;

  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  if (config.log_linear_proxy) {
    model.params = log_linear_proxy(experts, config.proxy_ridge);
    std::vector<VectorXd> negatives;
    for (const auto & z : experts) negatives.push_back(perturb(z, config, rng));
    model.epoch_losses.push_back(contrastive_loss(model, experts, negatives, config.margin));
    return model;
  }

  VectorXd theta = variant == PhiVariant::Quadratic ? pack(model.quadratic()) : pack(model.icn());
  Adam adam(theta.size(), config.learning_rate);
  std::vector<std::size_t> order(experts.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t k_neg = config.negatives_per_positive;
  std::size_t step = 0;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
    }
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      const auto n_pos = static_cast<Eigen::Index>(stop - start);
      std::vector<VectorXd> batch;
      batch.reserve((stop - start) * (1 + k_neg));
      for (std::size_t b = start; b < stop; ++b) batch.push_back(experts[order[b]]);
      for (std::size_t b = start; b < stop; ++b) {
        for (std::size_t k = 0; k < k_neg; ++k) batch.push_back(perturb(experts[order[b]], config, rng));
      }
      const MatrixXd z = as_columns(batch);

      double loss = 0.0;
      VectorXd grad;
      if (auto * q = std::get_if<QuadraticParams>(&model.params)) {
        MatrixXd centered;
        const auto phi = quadratic_batch(*q, z, centered);
        const auto w = loss_weights(phi, n_pos, config.margin, loss);
        QuadraticParams g;
        const MatrixXd weighted = centered * w.asDiagonal();
        g.q = weighted * centered.transpose();
        g.q = 0.5 * (g.q + g.q.transpose());
        g.center = -2.0 * q->q * weighted.rowwise().sum();
        g.offset = q->offset > 0.0 ? w.sum() : 0.0;
        grad = pack(g);
        adam.step(theta, grad);
        unpack(theta, *q);
        q->q = project_psd(q->q);
        theta = pack(*q);
      } else {
        auto & net = std::get<IcnParams>(model.params);
        detail::IcnCache cache;
        const auto phi = detail::icn_forward(net, z, &cache, &rng);
        const auto w = loss_weights(phi, n_pos, config.margin, loss);
        auto g = detail::zeros_like(net);
        detail::icn_backward(net, z, cache, w, g, nullptr);
        grad = pack(g);
        adam.step(theta, grad);
        unpack(theta, net);
        for (std::size_t k = 1; k < net.layers.size(); ++k) {
          net.layers[k].hidden = net.layers[k].hidden.cwiseMax(0.0);
        }
        theta = pack(net);
      }
      if (!std::isfinite(loss) || !theta.allFinite()) {
        throw TrainingError(
          "train_phi: loss diverged at epoch " + std::to_string(epoch + 1), epoch + 1);
      }
      epoch_loss += loss * static_cast<double>(n_pos);
      ++step;
      if (observer) observer(model, step);
    }
    model.epoch_losses.push_back(epoch_loss / static_cast<double>(order.size()));
  }
  return model;
}

}  // namespace scplan::icl
