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
#include "scplan/icl/training.hpp"

#include "icl/fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace scplan::icl
{
namespace
{

using testing::separable_experts;
using testing::separable_negatives;

TrainConfig quick_config(std::size_t epochs)
{
  TrainConfig c;
  c.epochs = epochs;
  c.seed = 42;
  c.dt = testing::kFixtureDt;
  return c;
}

TrainConfig small_icn_config(std::size_t epochs)
{
  auto c = quick_config(epochs);
  c.icn_widths = {32, 16, 1};
  c.icn_dropout = {0.3, 0.2};
  c.learning_rate = 0.005;
  return c;
}

std::vector<double> phis(const PhiModel & m, const std::vector<ingest::Transition> & ts)
{
  std::vector<double> out;
  for (const auto & t : ts) out.push_back(phi_eval(m, t.s_t, t.s_next, t.features));
  return out;
}

double mean(const std::vector<double> & v)
{
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

TEST(TrainPhi, SeparatesSmallAndLargeVelocityChanges)
{
  const auto ds = separable_experts(400, 1);
  const auto negatives = separable_negatives(ds, 2);
  const auto model = train_phi(ds, quick_config(200), PhiVariant::Quadratic);

  const auto pos = phis(model, ds.transitions);
  const auto neg = phis(model, negatives);
  EXPECT_LT(mean(pos), mean(neg));
  const double worst_expert = *std::max_element(pos.begin(), pos.end());
  const double best_negative = *std::min_element(neg.begin(), neg.end());
  EXPECT_GT(best_negative - worst_expert, 0.0)
    << "max expert phi " << worst_expert << ", min negative phi " << best_negative;
}

TEST(TrainPhi, ExpertsCheaperThanTrainingNegatives)
{
  const auto ds = separable_experts(300, 3);
  const auto cfg = quick_config(50);
  const auto model = train_phi(ds, cfg, PhiVariant::Quadratic);
  const auto experts = standardized_inputs(model, ds, ingest::Split::Train);
  std::mt19937_64 rng(99);
  double neg = 0.0;
  double pos = 0.0;
  for (const auto & z : experts) {
    pos += phi_normalized(model, z);
    neg += phi_normalized(model, perturb(z, cfg, rng));
  }
  EXPECT_LT(pos, neg);
}

TEST(TrainPhi, LogsOneLossPerEpochAndRecordsDt)
{
  const auto ds = separable_experts(100, 4);
  const auto model = train_phi(ds, quick_config(7), PhiVariant::Quadratic);
  EXPECT_EQ(model.epoch_losses.size(), 7u);
  EXPECT_EQ(model.dt, testing::kFixtureDt);
  EXPECT_LT(model.epoch_losses.back(), model.epoch_losses.front());
}

TEST(TrainPhi, RejectsZeroEpochs)
{
  EXPECT_THROW(train_phi(separable_experts(10, 5), quick_config(0), PhiVariant::Quadratic), core::InvalidInput);
}

TEST(TrainPhi, RejectsEmptyTrainingSplit)
{
  auto ds = separable_experts(10, 6);
  for (auto & t : ds.transitions) t.split = ingest::Split::Val;
  EXPECT_THROW(train_phi(ds, quick_config(1), PhiVariant::Quadratic), core::InvalidInput);
}

TEST(TrainPhi, DivergenceReportsEpoch)
{
  auto cfg = quick_config(3);
  cfg.learning_rate = 1e300;
  try {
    train_phi(separable_experts(200, 7), cfg, PhiVariant::Quadratic);
    FAIL() << "expected divergence";
  } catch (const TrainingError & e) {
    EXPECT_EQ(e.epoch(), 1u);
  }
}

TEST(TrainPhi, QuadraticDeterministicForSeed)
{
  const auto ds = separable_experts(150, 8);
  const auto a = train_phi(ds, quick_config(20), PhiVariant::Quadratic);
  const auto b = train_phi(ds, quick_config(20), PhiVariant::Quadratic);
  EXPECT_EQ(a.quadratic().q, b.quadratic().q);
  EXPECT_EQ(a.quadratic().center, b.quadratic().center);
  EXPECT_EQ(a.quadratic().offset, b.quadratic().offset);
  EXPECT_EQ(a.epoch_losses, b.epoch_losses);
}

TEST(TrainPhi, IcnDeterministicForSeed)
{
  const auto ds = separable_experts(100, 9);
  const auto a = train_phi(ds, small_icn_config(3), PhiVariant::Icn);
  const auto b = train_phi(ds, small_icn_config(3), PhiVariant::Icn);
  ASSERT_EQ(a.icn().layers.size(), b.icn().layers.size());
  for (std::size_t k = 0; k < a.icn().layers.size(); ++k) {
    EXPECT_EQ(a.icn().layers[k].hidden, b.icn().layers[k].hidden);
    EXPECT_EQ(a.icn().layers[k].skip, b.icn().layers[k].skip);
    EXPECT_EQ(a.icn().layers[k].bias, b.icn().layers[k].bias);
  }
}

TEST(TrainPhi, QuadraticStaysPsdAfterEveryStep)
{
  const auto ds = separable_experts(200, 10);
  std::size_t steps = 0;
  const auto model = train_phi(ds, quick_config(10), PhiVariant::Quadratic, [&](const PhiModel & m, std::size_t) {
    ++steps;
    ASSERT_TRUE(verify_convexity_analytic(m).passed);
  });
  EXPECT_EQ(steps, 10u * 4u);
  EXPECT_TRUE(verify_convexity_analytic(model).passed);
  EXPECT_TRUE(verify_convexity_empirical(model, {10000, 1, 1e-9, std::nullopt}).passed);
}

TEST(TrainPhi, IcnStructurallyConvexAfterEveryStep)
{
  const auto ds = separable_experts(200, 11);
  std::size_t steps = 0;
  const auto model = train_phi(ds, small_icn_config(4), PhiVariant::Icn, [&](const PhiModel & m, std::size_t) {
    ++steps;
    ASSERT_TRUE(verify_convexity_structural(m).passed);
  });
  EXPECT_EQ(steps, 4u * 4u);
  EXPECT_TRUE(verify_convexity_empirical(model, {2000, 2, 1e-9, std::nullopt}).passed);
}

TEST(TrainPhi, TrainedModelsAreNonnegativeUnderFuzz)
{
  const auto ds = separable_experts(200, 12);
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0.0, 5.0);
  for (auto variant : {PhiVariant::Quadratic, PhiVariant::Icn}) {
    const auto model = variant == PhiVariant::Quadratic ? train_phi(ds, quick_config(20), variant)
                                                        : train_phi(ds, small_icn_config(3), variant);
    for (int k = 0; k < 10000; ++k) {
      const auto s = core::State::make({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
      const auto n = core::State::make({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
      ingest::FeatureVector ctx;
      for (auto & c : ctx) c = g(rng);
      ASSERT_GE(phi_eval(model, s, n, ctx), 0.0);
    }
  }
}

TEST(LogLinearProxy, FitsConditionalGaussianAndSeparates)
{
  const auto ds = separable_experts(400, 14);
  auto cfg = quick_config(1);
  cfg.log_linear_proxy = true;
  const auto model = train_phi(ds, cfg, PhiVariant::Quadratic);
  EXPECT_TRUE(verify_convexity_analytic(model).passed);
  const auto pos = phis(model, ds.transitions);
  const auto neg = phis(model, separable_negatives(ds, 15));
  EXPECT_LT(mean(pos), mean(neg));
}

TEST(LogLinearProxy, NetworkVariantRejected)
{
  auto cfg = small_icn_config(1);
  cfg.log_linear_proxy = true;
  EXPECT_THROW(train_phi(separable_experts(20, 16), cfg, PhiVariant::Icn), core::InvalidInput);
}

TEST(Perturb, OnlyTouchesNextStateAndDisplacement)
{
  TrainConfig cfg;
  cfg.jump_probability = 0.0;
  std::mt19937_64 rng(17);
  const VectorXd z = VectorXd::LinSpaced(10, 0.0, 9.0);
  const VectorXd p = perturb(z, cfg, rng);
  EXPECT_EQ(p.head(6), z.head(6));
  EXPECT_NE(p.tail(4), z.tail(4));

  cfg.jump_probability = 1.0;
  const VectorXd j = perturb(z, cfg, rng);
  EXPECT_NE(j.head(2), z.head(2));
  EXPECT_EQ(j.segment(2, 4), z.segment(2, 4));
}

}  // namespace
}  // namespace scplan::icl
