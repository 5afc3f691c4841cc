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

#include "scplan/eval/metrics.hpp"

#include "scplan/planner/scp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scplan::eval
{

namespace
{

/// Compensated running sum, so long batches do not drift.
class Accumulator
{
public:
  void add(double x)
  {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
    ++count_;
  }
  double sum() const { return sum_ + comp_; }
  std::size_t count() const { return count_; }
  double mean() const { return count_ == 0 ? 0.0 : sum() / static_cast<double>(count_); }

private:
  double sum_{0.0};
  double comp_{0.0};
  std::size_t count_{0};
};

MeanStd mean_std(const std::vector<double> & xs)
{
  Accumulator acc;
  for (double x : xs) acc.add(x);
  const double mean = acc.mean();
  Accumulator sq;
  for (double x : xs) sq.add((x - mean) * (x - mean));
  return {mean, std::sqrt(sq.mean())};
}

double percent(std::size_t part, std::size_t whole)
{
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

std::array<std::vector<std::size_t>, 7> violating_steps(
  const Sample & sample, const icl::PhiModel * phi, const CheckConfig & config)
{
  std::optional<core::Scenario> adjusted;
  if (config.epsilon) {
    adjusted = sample.scenario;
    adjusted->limits.epsilon = *config.epsilon;
  }
  const auto records =
    planner::postcheck(sample.trajectory, adjusted ? *adjusted : sample.scenario, phi, config.tol, config.ttc_cap);
  std::array<std::vector<std::size_t>, 7> steps;
  for (const auto & r : records) steps[static_cast<std::size_t>(r.constraint) - 1].push_back(r.step);
  for (auto & s : steps) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return steps;
}

double violation_rate(
  const std::vector<Sample> & samples, core::ConstraintId constraint, const icl::PhiModel * phi,
  const CheckConfig & config)
{
  if (samples.empty()) throw core::InvalidInput("violation_rate: no trajectories");
  if (constraint == core::ConstraintId::C7 && phi == nullptr) {
    throw core::InvalidInput("violation_rate: C7 needs a cost model");
  }
  // Hard constraints do not depend on the cost model; skip its evaluation.
  const icl::PhiModel * used = constraint == core::ConstraintId::C7 ? phi : nullptr;
  std::size_t violating = 0;
  std::size_t total = 0;
  for (const auto & s : samples) {
    violating += violating_steps(s, used, config)[static_cast<std::size_t>(constraint) - 1].size();
    total += s.trajectory.size();
  }
  return percent(violating, total);
}

double constraint_quality(const std::vector<Sample> & samples, const icl::PhiModel & phi, double ttc_cap)
{
  Accumulator acc;
  for (const auto & s : samples) {
    const auto & traj = s.trajectory;
    for (std::size_t t = 0; t < traj.horizon(); ++t) {
      const auto ctx = ingest::scenario_context(s.scenario, traj[t], traj[t + 1], t, traj.horizon(), ttc_cap);
      acc.add(icl::phi_eval(phi, traj[t], traj[t + 1], ctx));
    }
  }
  if (acc.count() == 0) throw core::InvalidInput("constraint_quality: no transitions");
  return acc.mean();
}

double feasibility_rate(const std::vector<Sample> & samples, const icl::PhiModel * phi, const CheckConfig & config)
{
  if (samples.empty()) return 0.0;
  std::size_t clean = 0;
  for (const auto & s : samples) {
    const auto steps = violating_steps(s, phi, config);
    clean += std::all_of(steps.begin(), steps.end(), [](const auto & v) { return v.empty(); }) ? 1 : 0;
  }
  return percent(clean, samples.size());
}

TrajectoryQuality trajectory_quality(const core::Trajectory & pred, const core::Trajectory & reference)
{
  const std::size_t n = std::min(pred.size(), reference.size());
  if (n == 0) throw core::InvalidInput("trajectory_quality: no shared steps");
  std::vector<double> dv(n), da(n), dp(n);
  for (std::size_t t = 0; t < n; ++t) {
    dv[t] = (pred[t].velocity() - reference[t].velocity()).norm();
    da[t] = (pred[t].acceleration() - reference[t].acceleration()).norm();
    dp[t] = (pred[t].position() - reference[t].position()).norm();
  }
  return {mean_std(dv), mean_std(da), mean_std(dp), n};
}

SuccessRates success_rates(const std::vector<Sample> & samples, const SuccessBounds & bounds)
{
  std::size_t ok1 = 0, ok2 = 0, total = 0;
  for (const auto & s : samples) {
    const auto & lim = s.scenario.limits;
    const double speed_bound = bounds.speed_change.value_or(lim.a_max * lim.dt);
    const double accel_bound = bounds.accel_change.value_or(2.0 * lim.a_max * lim.dt);
    const auto & traj = s.trajectory;
    for (std::size_t t = 0; t < traj.horizon(); ++t) {
      ok1 += std::abs(traj[t + 1].velocity().norm() - traj[t].velocity().norm()) <= speed_bound ? 1 : 0;
      ok2 += (traj[t + 1].acceleration() - traj[t].acceleration()).norm() <= accel_bound ? 1 : 0;
      ++total;
    }
  }
  return {percent(ok1, total), percent(ok2, total)};
}

std::string_view to_string(RewardScheme scheme)
{
  switch (scheme) {
    case RewardScheme::MinMax:
      return "minmax";
    case RewardScheme::Log:
      return "log";
    case RewardScheme::Robust:
      return "robust";
  }
  return "minmax";
}

RewardScheme reward_scheme_from_string(std::string_view name)
{
  for (auto s : {RewardScheme::MinMax, RewardScheme::Log, RewardScheme::Robust}) {
    if (to_string(s) == name) return s;
  }
  throw core::InvalidInput("unknown reward scheme: " + std::string(name));
}

NormalizedRewards reward_normalize(const std::vector<std::vector<double>> & episode_rewards, RewardScheme scheme)
{
  NormalizedRewards out;
  for (const auto & episodes : episode_rewards) {
    if (episodes.empty()) throw core::InvalidInput("reward_normalize: method without episodes");
    for (double r : episodes) {
      if (!std::isfinite(r)) throw core::InvalidInput("reward_normalize: non-finite reward");
    }
  }
  if (scheme == RewardScheme::Robust) {
    for (const auto & episodes : episode_rewards) out.scores.push_back(*std::min_element(episodes.begin(), episodes.end()));
    return out;
  }
  if (episode_rewards.size() < 2) throw core::InvalidInput("reward_normalize: at least two methods required");
  std::vector<double> means;
  for (const auto & episodes : episode_rewards) {
    Accumulator acc;
    for (double r : episodes) acc.add(r);
    means.push_back(acc.mean());
  }
  const auto [lo_it, hi_it] = std::minmax_element(means.begin(), means.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  if (!(span > 0.0)) {
    out.degenerate = true;
    out.scores.assign(means.size(), 0.5);
    return out;
  }
  for (double m : means) {
    out.scores.push_back(scheme == RewardScheme::MinMax ? (m - lo) / span : std::log1p(m - lo) / std::log1p(span));
  }
  return out;
}

}  // namespace scplan::eval
