// Copyright 2026 The valgraph Authors. All rights reserved.
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

#include "valgraph/inference.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "valgraph/errors.hpp"

namespace valgraph {

InferenceProblem::InferenceProblem(WorldModel model, RewardTable fixed_rewards,
                                   std::vector<Literal> free, std::vector<GaussianPrior> prior,
                                   std::vector<Observation> observations)
    : model_(std::move(model)),
      fixed_(std::move(fixed_rewards)),
      free_(std::move(free)),
      prior_(std::move(prior)),
      observations_(std::move(observations)) {
  if (prior_.size() != free_.size()) {
    throw ProblemError("need one prior per free literal");
  }
  std::set<Literal> seen;
  for (const Literal& l : free_) {
    if (!model_.find(l.variable)) {
      throw ProblemError("free literal " + l.to_string() + " is not in the model");
    }
    if (!seen.insert(l).second) throw ProblemError("free literal " + l.to_string() + " repeated");
    if (fixed_.contains(l)) {
      throw ProblemError("free literal " + l.to_string() + " also has a fixed reward");
    }
  }
  for (const auto& [l, value] : fixed_.entries()) {
    if (!model_.find(l.variable)) {
      throw ProblemError("fixed reward " + l.to_string() + " is not in the model");
    }
  }
  for (const GaussianPrior& p : prior_) validate(p);
  for (const Observation& o : observations_) validate(o, model_);
}

RewardTable InferenceProblem::rewards_at(std::span<const double> r_free) const {
  if (r_free.size() != free_.size()) {
    throw ProblemError("expected " + std::to_string(free_.size()) + " free reward values, got " +
                       std::to_string(r_free.size()));
  }
  RewardTable rewards = fixed_;
  for (std::size_t i = 0; i < free_.size(); ++i) rewards.set(free_[i], r_free[i]);
  return rewards;
}

std::vector<double> InferenceProblem::prior_means() const {
  std::vector<double> out;
  out.reserve(prior_.size());
  for (const GaussianPrior& p : prior_) out.push_back(p.mean);
  return out;
}

double log_likelihood(const InferenceProblem& problem, std::span<const double> r_free) {
  const RewardTable rewards = problem.rewards_at(r_free);
  if (problem.observations().empty()) return 0.0;
  const ValueTable values = evaluate_values(problem.model(), rewards);
  const auto value = [&](const Literal& l) { return values.at(l); };
  double total = 0.0;
  for (const Observation& o : problem.observations()) {
    total += observation_log_likelihood(o, value);
  }
  return total;
}

double log_posterior(const InferenceProblem& problem, std::span<const double> r_free) {
  double lp = log_likelihood(problem, r_free);
  for (std::size_t i = 0; i < r_free.size(); ++i) lp += problem.prior()[i].log_density(r_free[i]);
  return lp;
}

PosteriorSamples mh_sample(const InferenceProblem& problem, const McmcConfig& config,
                           std::uint64_t seed) {
  return random_walk_metropolis(
      problem.free(), problem.prior_means(),
      [&problem](std::span<const double> r) { return log_posterior(problem, r); }, config, seed);
}

GridPosterior grid_posterior(const InferenceProblem& problem, std::span<const GridAxis> axes) {
  return grid_posterior(problem.free(), axes,
                        [&problem](std::span<const double> r) { return log_posterior(problem, r); });
}

PredictiveSummary predict_value(const InferenceProblem& problem, const PosteriorSamples& posterior,
                                const Literal& target) {
  problem.model().index_of(target.variable);
  std::vector<double> values;
  values.reserve(posterior.draws.size());
  for (const auto& draw : posterior.draws) {
    values.push_back(evaluate_values(problem.model(), problem.rewards_at(draw)).at(target));
  }
  return summarize(target, values);
}

PredictiveSummary predict_value(const InferenceProblem& problem, const GridPosterior& posterior,
                                const Literal& target) {
  problem.model().index_of(target.variable);
  std::vector<double> values, weights;
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    if (posterior.mass[i] == 0.0) continue;
    const std::vector<double> point = posterior.point(i);
    values.push_back(evaluate_values(problem.model(), problem.rewards_at(point)).at(target));
    weights.push_back(posterior.mass[i]);
  }
  return summarize(target, values, weights);
}

PredictiveSummary prior_predictive(const InferenceProblem& problem, const Literal& target) {
  problem.model().index_of(target.variable);
  const std::vector<double> means = problem.prior_means();
  const double center =
      evaluate_values(problem.model(), problem.rewards_at(means)).at(target);
  double var = 0.0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    std::vector<double> shifted = means;
    shifted[i] += 1.0;
    const double slope =
        evaluate_values(problem.model(), problem.rewards_at(shifted)).at(target) - center;
    var += slope * slope * problem.prior()[i].sd * problem.prior()[i].sd;
  }
  return gaussian_summary(target, center, std::sqrt(var));
}

}  // namespace valgraph
