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
#include "scplan/icl/model_io.hpp"
#include "scplan/icl/training.hpp"

#include "icl/fixtures.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace scplan::icl
{
namespace
{

PhiModel trained_quadratic()
{
  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.seed = 3;
  cfg.dt = testing::kFixtureDt;
  auto m = train_phi(testing::separable_experts(120, 1), cfg, PhiVariant::Quadratic);
  m.reports = verify_all(m, {500, 1, 1e-9, std::nullopt});
  return m;
}

void expect_same_normalizer(const Normalizer & a, const Normalizer & b)
{
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.scale, b.scale);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
}

TEST(ModelIo, QuadraticRoundTripIsBitExact)
{
  const auto m = trained_quadratic();
  const auto back = model_from_json(Json::parse(to_json(m).dump()));
  EXPECT_EQ(back.quadratic().q, m.quadratic().q);
  EXPECT_EQ(back.quadratic().center, m.quadratic().center);
  EXPECT_EQ(back.quadratic().offset, m.quadratic().offset);
  expect_same_normalizer(back.normalizer, m.normalizer);
  EXPECT_EQ(back.dt, m.dt);
  EXPECT_EQ(back.epsilon, m.epsilon);
  EXPECT_EQ(back.epoch_losses, m.epoch_losses);
  EXPECT_EQ(back.train_config.seed, 3u);
  EXPECT_EQ(back.train_config.epochs, 5u);
  ASSERT_EQ(back.reports.size(), m.reports.size());
  for (std::size_t i = 0; i < m.reports.size(); ++i) {
    EXPECT_EQ(back.reports[i].mode, m.reports[i].mode);
    EXPECT_EQ(back.reports[i].passed, m.reports[i].passed);
    EXPECT_EQ(back.reports[i].checks_run, m.reports[i].checks_run);
    EXPECT_EQ(back.reports[i].worst_violation, m.reports[i].worst_violation);
  }
}

TEST(ModelIo, MatricesAreRowMajor)
{
  MatrixXd q(2, 2);
  q << 1.0, 2.0, 2.0, 5.0;
  const auto j = to_json(make_quadratic(q, VectorXd::Zero(2), 0.0));
  const auto & data = j.at("parameters").at("q").at("data");
  ASSERT_EQ(data.size(), 4u);
  MatrixXd asym(2, 2);
  asym << 1.0, 2.0, 3.0, 4.0;
  const auto j2 = to_json(make_quadratic(asym, VectorXd::Zero(2), 0.0));
  EXPECT_EQ(j2["parameters"]["q"]["data"][1].get<double>(), 2.0);
  EXPECT_EQ(j2["parameters"]["q"]["data"][2].get<double>(), 3.0);
  EXPECT_EQ(j.at("variant"), "quadratic");
}

TEST(ModelIo, NetworkRoundTripPreservesOutputs)
{
  const auto m = make_icn(Normalizer::identity(kIcnInputDim), {8, 4, 1}, {0.1, 0.1}, Activation::Softplus, 5);
  const auto back = model_from_json(Json::parse(to_json(m).dump()));
  EXPECT_EQ(back.variant(), PhiVariant::Icn);
  EXPECT_EQ(back.icn().activation, Activation::Softplus);
  EXPECT_EQ(back.icn().dropout, m.icn().dropout);
  for (std::size_t k = 0; k < m.icn().layers.size(); ++k) {
    EXPECT_EQ(back.icn().layers[k].hidden, m.icn().layers[k].hidden);
    EXPECT_EQ(back.icn().layers[k].skip, m.icn().layers[k].skip);
    EXPECT_EQ(back.icn().layers[k].bias, m.icn().layers[k].bias);
  }
  const VectorXd z = VectorXd::LinSpaced(kIcnInputDim, -1.0, 1.0);
  EXPECT_EQ(phi_normalized(back, z), phi_normalized(m, z));
}

TEST(ModelIo, FileRoundTrip)
{
  const auto m = trained_quadratic();
  const auto path = std::filesystem::temp_directory_path() / "scplan_model_io_test.json";
  save_model(m, path);
  const auto back = load_model(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.quadratic().q, m.quadratic().q);
}

TEST(ModelIo, MalformedInputRejected)
{
  const auto path = std::filesystem::temp_directory_path() / "scplan_model_io_bad.json";
  {
    std::ofstream(path) << "{\"variant\": \"quadratic\"";
  }
  EXPECT_THROW(load_model(path), core::InvalidInput);
  {
    std::ofstream(path) << "{\"variant\": \"cubic\", \"parameters\": {}}";
  }
  EXPECT_THROW(load_model(path), core::InvalidInput);
  std::filesystem::remove(path);

  auto j = to_json(make_quadratic(MatrixXd::Identity(10, 10), VectorXd::Zero(10), 0.0));
  j["parameters"]["q"]["rows"] = 3;
  EXPECT_THROW(model_from_json(j), core::InvalidInput);
}

}  // namespace
}  // namespace scplan::icl
