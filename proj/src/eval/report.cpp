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

#include "scplan/eval/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace scplan::eval
{

namespace
{

using ingest::Json;

constexpr std::array<RewardScheme, 3> kSchemes{RewardScheme::MinMax, RewardScheme::Log, RewardScheme::Robust};

struct Pooled
{
  double n{0.0};
  double sum{0.0};
  double sum_sq_dev{0.0};

  /// Adds a group with its mean and population std (Chan's parallel update).
  void add(const MeanStd & g, double count)
  {
    if (count <= 0.0) return;
    const double mean = n > 0.0 ? sum / n : 0.0;
    const double delta = g.mean - mean;
    const double total = n + count;
    sum_sq_dev += g.std * g.std * count + delta * delta * n * count / total;
    sum += g.mean * count;
    n = total;
  }
  MeanStd result() const { return n > 0.0 ? MeanStd{sum / n, std::sqrt(sum_sq_dev / n)} : MeanStd{}; }
};

Json optional_number(const std::optional<double> & v) { return v ? Json(*v) : Json(nullptr); }

std::string csv_number(const std::optional<double> & v)
{
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", *v);
  return buf;
}

}  // namespace

double episode_reward(
  const core::Trajectory & traj, const core::Scenario & scenario, const icl::PhiModel * phi,
  const baselines::RewardParams & params)
{
  double total = 0.0;
  for (std::size_t t = 0; t < traj.horizon(); ++t) {
    total += baselines::reward(traj[t], traj[t + 1], t, traj.horizon(), scenario, phi, params);
  }
  return total;
}

std::vector<MetricsReport> build_reports(
  const std::vector<MethodRun> & runs, const std::map<std::string, core::Scenario> & scenarios,
  const icl::PhiModel * phi, const ReportConfig & config)
{
  std::vector<MetricsReport> reports;
  std::vector<std::vector<double>> episodes(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto & run = runs[i];
    MetricsReport rep;
    rep.method = run.method;
    rep.dataset = run.dataset;
    rep.results = run.results.size();

    std::vector<Sample> samples;
    double duration_sum = 0.0, time_sum = 0.0;
    for (const auto & r : run.results) {
      rep.feasible_results += r.feasible() ? 1 : 0;
      time_sum += r.compute_time;
      const auto & traj = r.trajectory ? r.trajectory : r.attempt;
      if (!traj) continue;
      const auto it = scenarios.find(r.scenario_id);
      if (it == scenarios.end()) throw core::InvalidInput("no scenario for result " + r.scenario_id);
      samples.push_back({*traj, it->second});
      duration_sum += traj->duration();
    }
    rep.evaluated = samples.size();
    if (rep.results > 0) {
      rep.plan_success_rate = 100.0 * static_cast<double>(rep.feasible_results) / static_cast<double>(rep.results);
      if (config.with_timing) rep.mean_time_s = time_sum / static_cast<double>(rep.results);
    }

    if (!samples.empty()) {
      double cv_sum = 0.0;
      int cv_rows = 0;
      for (std::size_t k = 0; k < 7; ++k) {
        const auto id = static_cast<core::ConstraintId>(k + 1);
        if (id == core::ConstraintId::C7 && phi == nullptr) continue;
        rep.violation_rate[k] = violation_rate(samples, id, phi, config.check);
        if (id != core::ConstraintId::C5) {
          cv_sum += *rep.violation_rate[k];
          ++cv_rows;
        }
      }
      rep.mean_cv = cv_sum / cv_rows;
      rep.success = success_rates(samples, config.bounds);
      rep.feasibility_rate = feasibility_rate(samples, phi, config.check);
      if (phi != nullptr) {
        const bool any_transition =
          std::any_of(samples.begin(), samples.end(), [](const Sample & s) { return s.trajectory.horizon() > 0; });
        if (any_transition) rep.constraint_quality = constraint_quality(samples, *phi, config.check.ttc_cap);
      }
      rep.mean_duration_s = duration_sum / static_cast<double>(samples.size());

      Pooled dv, da, dp;
      double ref_v = 0.0, ref_a = 0.0, ref_p = 0.0, steps = 0.0;
      for (const auto & s : samples) {
        if (!s.scenario.reference) continue;
        const auto & ref = *s.scenario.reference;
        const auto q = trajectory_quality(s.trajectory, ref);
        const double n = static_cast<double>(q.steps);
        dv.add(q.dv, n);
        da.add(q.da, n);
        dp.add(q.dp, n);
        for (std::size_t t = 0; t < q.steps; ++t) {
          ref_v += ref[t].velocity().norm();
          ref_a += ref[t].acceleration().norm();
          ref_p += (ref[t].position() - ref.front().position()).norm();
        }
        steps += n;
      }
      if (steps > 0.0) {
        rep.quality = TrajectoryQuality{dv.result(), da.result(), dp.result(), static_cast<std::size_t>(steps)};
        double rel = 0.0;
        int parts = 0;
        for (const auto & [delta, magnitude] :
             {std::pair{rep.quality->dv.mean, ref_v}, {rep.quality->da.mean, ref_a}, {rep.quality->dp.mean, ref_p}}) {
          if (magnitude > 0.0) {
            rel += delta / (magnitude / steps);
            ++parts;
          }
        }
        if (parts > 0) rep.relative_deviation = 100.0 * rel / parts;
      }

      for (const auto & s : samples) episodes[i].push_back(episode_reward(s.trajectory, s.scenario, phi, config.reward));
      double sum = 0.0;
      for (double r : episodes[i]) sum += r;
      rep.reward_mean = sum / static_cast<double>(episodes[i].size());
    }
    reports.push_back(std::move(rep));
  }

  std::vector<std::size_t> scored;
  std::vector<std::vector<double>> scored_episodes;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (episodes[i].empty()) continue;
    scored.push_back(i);
    scored_episodes.push_back(episodes[i]);
  }
  for (std::size_t s = 0; s < kSchemes.size(); ++s) {
    if (scored.empty() || (kSchemes[s] != RewardScheme::Robust && scored.size() < 2)) continue;
    const auto norm = reward_normalize(scored_episodes, kSchemes[s]);
    for (std::size_t j = 0; j < scored.size(); ++j) {
      reports[scored[j]].reward_scores[s] = norm.scores[j];
      reports[scored[j]].reward_degenerate = reports[scored[j]].reward_degenerate || norm.degenerate;
    }
  }
  return reports;
}

Json to_json(const MetricsReport & r)
{
  Json rates = Json::object();
  for (std::size_t k = 0; k < 7; ++k) rates["C" + std::to_string(k + 1)] = optional_number(r.violation_rate[k]);
  Json quality = nullptr;
  if (r.quality) {
    const auto ms = [](const MeanStd & m) { return Json{{"mean", m.mean}, {"std", m.std}}; };
    quality = Json{{"dv", ms(r.quality->dv)}, {"da", ms(r.quality->da)}, {"dp", ms(r.quality->dp)}, {"steps", r.quality->steps}};
  }
  Json rewards = Json::object();
  for (std::size_t s = 0; s < kSchemes.size(); ++s) rewards[std::string(to_string(kSchemes[s]))] = optional_number(r.reward_scores[s]);
  return Json{
    {"method", r.method},
    {"dataset", r.dataset},
    {"results", r.results},
    {"feasible_results", r.feasible_results},
    {"evaluated", r.evaluated},
    {"plan_success_rate", r.plan_success_rate},
    {"violation_rate", std::move(rates)},
    {"mean_cv", optional_number(r.mean_cv)},
    {"sr1", r.success ? Json(r.success->sr1) : Json(nullptr)},
    {"sr2", r.success ? Json(r.success->sr2) : Json(nullptr)},
    {"mean_sr", r.success ? Json(r.success->mean()) : Json(nullptr)},
    {"constraint_quality", optional_number(r.constraint_quality)},
    {"feasibility_rate", optional_number(r.feasibility_rate)},
    {"trajectory_quality", std::move(quality)},
    {"relative_deviation", optional_number(r.relative_deviation)},
    {"mean_duration_s", optional_number(r.mean_duration_s)},
    {"mean_time_s", optional_number(r.mean_time_s)},
    {"reward_mean", optional_number(r.reward_mean)},
    {"rewards", std::move(rewards)},
    {"reward_degenerate", r.reward_degenerate},
  };
}

Json to_json(const std::vector<MetricsReport> & reports)
{
  Json out = Json::array();
  for (const auto & r : reports) out.push_back(to_json(r));
  return out;
}

std::string to_csv(const std::vector<MetricsReport> & reports)
{
  std::ostringstream os;
  os << "method,dataset,results,feasible_results,evaluated,plan_success_rate,C1,C2,C3,C4,C5,C6,C7,mean_cv,sr1,sr2,"
        "mean_sr,constraint_quality,feasibility_rate,dv_mean,dv_std,da_mean,da_std,dp_mean,dp_std,"
        "relative_deviation,mean_duration_s,mean_time_s,reward_mean,reward_minmax,reward_log,reward_robust\n";
  for (const auto & r : reports) {
    std::vector<std::string> cells{r.method, r.dataset, std::to_string(r.results), std::to_string(r.feasible_results),
                                   std::to_string(r.evaluated), csv_number(r.plan_success_rate)};
    for (const auto & v : r.violation_rate) cells.push_back(csv_number(v));
    cells.push_back(csv_number(r.mean_cv));
    const auto sr = [&](auto f) { return r.success ? csv_number(f(*r.success)) : std::string(); };
    cells.push_back(sr([](const SuccessRates & s) { return s.sr1; }));
    cells.push_back(sr([](const SuccessRates & s) { return s.sr2; }));
    cells.push_back(sr([](const SuccessRates & s) { return s.mean(); }));
    cells.push_back(csv_number(r.constraint_quality));
    cells.push_back(csv_number(r.feasibility_rate));
    for (auto member : {&TrajectoryQuality::dv, &TrajectoryQuality::da, &TrajectoryQuality::dp}) {
      cells.push_back(r.quality ? csv_number(((*r.quality).*member).mean) : "");
      cells.push_back(r.quality ? csv_number(((*r.quality).*member).std) : "");
    }
    cells.push_back(csv_number(r.relative_deviation));
    cells.push_back(csv_number(r.mean_duration_s));
    cells.push_back(csv_number(r.mean_time_s));
    cells.push_back(csv_number(r.reward_mean));
    for (const auto & v : r.reward_scores) cells.push_back(csv_number(v));
    for (std::size_t c = 0; c < cells.size(); ++c) os << (c ? "," : "") << cells[c];
    os << '\n';
  }
  return os.str();
}

void save_reports(
  const std::vector<MetricsReport> & reports, const std::filesystem::path & json_path,
  const std::filesystem::path & csv_path)
{
  std::ofstream js(json_path);
  if (!js) throw std::runtime_error("cannot write " + json_path.string());
  js << to_json(reports).dump(2) << '\n';
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
  csv << to_csv(reports);
}

}  // namespace scplan::eval
