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

#include "scplan/icl/model_io.hpp"

#include <fstream>

namespace scplan::icl
{
namespace
{

Json matrix_json(const MatrixXd & m)
{
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

MatrixXd matrix_from_json(const Json & j)
{
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto & data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw core::InvalidInput("model file: matrix size does not match its data");
  }
  MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = data[k++].get<double>();
  }
  return m;
}

Json vector_json(const VectorXd & v)
{
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

VectorXd vector_from_json(const Json & j)
{
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

Json to_json(const TrainConfig & c)
{
  return {
    {"learning_rate", c.learning_rate},
    {"epochs", c.epochs},
    {"batch_size", c.batch_size},
    {"negatives_per_positive", c.negatives_per_positive},
    {"perturbation_scale", c.perturbation_scale},
    {"margin", c.margin},
    {"jump_probability", c.jump_probability},
    {"seed", c.seed},
    {"log_linear_proxy", c.log_linear_proxy},
    {"proxy_ridge", c.proxy_ridge},
    {"icn_widths", c.icn_widths},
    {"icn_dropout", c.icn_dropout},
    {"icn_activation", std::string(to_string(c.icn_activation))},
    {"dt", c.dt},
  };
}

TrainConfig train_config_from_json(const Json & j)
{
  TrainConfig c;
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.negatives_per_positive = j.value("negatives_per_positive", c.negatives_per_positive);
  c.perturbation_scale = j.value("perturbation_scale", c.perturbation_scale);
  c.margin = j.value("margin", c.margin);
  c.jump_probability = j.value("jump_probability", c.jump_probability);
  c.seed = j.value("seed", c.seed);
  c.log_linear_proxy = j.value("log_linear_proxy", c.log_linear_proxy);
  c.proxy_ridge = j.value("proxy_ridge", c.proxy_ridge);
  c.icn_widths = j.value("icn_widths", c.icn_widths);
  c.icn_dropout = j.value("icn_dropout", c.icn_dropout);
  if (j.contains("icn_activation")) {
    c.icn_activation = activation_from_string(j.at("icn_activation").get<std::string>());
  }
  c.dt = j.value("dt", c.dt);
  return c;
}

Json to_json(const ConvexityReport & r)
{
  return {
    {"mode", std::string(to_string(r.mode))},
    {"passed", r.passed},
    {"checks_run", r.checks_run},
    {"worst_violation", r.worst_violation},
  };
}

ConvexityReport convexity_report_from_json(const Json & j)
{
  ConvexityReport r;
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "analytic") {
    r.mode = ConvexityReport::Mode::Analytic;
  } else if (mode == "structural") {
    r.mode = ConvexityReport::Mode::Structural;
  } else if (mode == "empirical") {
    r.mode = ConvexityReport::Mode::Empirical;
  } else {
    throw core::InvalidInput("model file: unknown convexity mode '" + mode + "'");
  }
  r.passed = j.at("passed").get<bool>();
  r.checks_run = j.at("checks_run").get<std::size_t>();
  r.worst_violation = j.at("worst_violation").get<double>();
  return r;
}

Json to_json(const PhiModel & m)
{
  Json params;
  Json dims;
  if (const auto * q = std::get_if<QuadraticParams>(&m.params)) {
    dims = {{"input", q->center.size()}};
    params = {{"q", matrix_json(q->q)}, {"center", vector_json(q->center)}, {"offset", q->offset}};
  } else {
    const auto & net = m.icn();
    Json widths = Json::array();
    Json layers = Json::array();
    for (const auto & l : net.layers) {
      widths.push_back(l.bias.size());
      layers.push_back(
        {{"hidden", matrix_json(l.hidden)}, {"skip", matrix_json(l.skip)}, {"bias", vector_json(l.bias)}});
    }
    dims = {{"input", m.normalizer.mean.size()}, {"widths", std::move(widths)}};
    params = {
      {"activation", std::string(to_string(net.activation))},
      {"dropout", net.dropout},
      {"layers", std::move(layers)}};
  }
  Json reports = Json::array();
  for (const auto & r : m.reports) reports.push_back(to_json(r));
  return {
    {"variant", std::string(to_string(m.variant()))},
    {"dims", std::move(dims)},
    {"parameters", std::move(params)},
    {"normalizer",
     {{"mean", vector_json(m.normalizer.mean)},
      {"scale", vector_json(m.normalizer.scale)},
      {"lower", vector_json(m.normalizer.lower)},
      {"upper", vector_json(m.normalizer.upper)}}},
    {"dt", m.dt},
    {"epsilon", m.epsilon},
    {"train_config", to_json(m.train_config)},
    {"convexity_reports", std::move(reports)},
    {"training_log", m.epoch_losses},
  };
}

PhiModel model_from_json(const Json & j)
{
  PhiModel m;
  const auto variant = variant_from_string(j.at("variant").get<std::string>());
  const auto & p = j.at("parameters");
  if (variant == PhiVariant::Quadratic) {
    QuadraticParams q{matrix_from_json(p.at("q")), vector_from_json(p.at("center")), p.at("offset").get<double>()};
    if (q.q.rows() != q.q.cols() || q.q.rows() != q.center.size()) {
      throw core::InvalidInput("model file: quadratic shape mismatch");
    }
    m.params = std::move(q);
  } else {
    IcnParams net;
    net.activation = activation_from_string(p.at("activation").get<std::string>());
    net.dropout = p.at("dropout").get<std::vector<double>>();
    for (const auto & l : p.at("layers")) {
      net.layers.push_back({matrix_from_json(l.at("hidden")), matrix_from_json(l.at("skip")), vector_from_json(l.at("bias"))});
    }
    m.params = std::move(net);
  }
  const auto & n = j.at("normalizer");
  m.normalizer = {
    vector_from_json(n.at("mean")), vector_from_json(n.at("scale")), vector_from_json(n.at("lower")),
    vector_from_json(n.at("upper"))};
  if (m.normalizer.mean.size() != static_cast<Eigen::Index>(m.input_dim())) {
    throw core::InvalidInput("model file: normalizer dimension does not match the variant");
  }
  m.dt = j.value("dt", 0.0);
  m.epsilon = j.value("epsilon", m.epsilon);
  if (j.contains("train_config")) m.train_config = train_config_from_json(j.at("train_config"));
  for (const auto & r : j.value("convexity_reports", Json::array())) {
    m.reports.push_back(convexity_report_from_json(r));
  }
  m.epoch_losses = j.value("training_log", std::vector<double>{});
  return m;
}

void save_model(const PhiModel & model, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(model).dump(2) << '\n';
}

PhiModel load_model(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return model_from_json(Json::parse(in));
  } catch (const Json::exception & e) {
    throw core::InvalidInput("model file " + path.string() + ": " + e.what());
  }
}

}  // namespace scplan::icl
