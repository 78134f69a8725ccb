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

#include "valgraph/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <utility>

#include "valgraph/errors.hpp"

namespace valgraph {

namespace {

std::size_t free_index(const FlatProblem& problem, const Literal& literal) {
  const auto& free = problem.free();
  return static_cast<std::size_t>(std::find(free.begin(), free.end(), literal) - free.begin());
}

void require_in_play(const FlatProblem& problem, const Literal& target) {
  const auto& all = problem.literals();
  if (std::find(all.begin(), all.end(), target) == all.end()) {
    throw UnknownVariableError("literal " + target.to_string() + " is not in play");
  }
}

}  // namespace

FlatProblem::FlatProblem(std::vector<Literal> literals, std::vector<Literal> free,
                         std::map<Literal, double> fixed, std::vector<GaussianPrior> prior,
                         GaussianPrior default_prior, std::vector<Observation> observations)
    : literals_(std::move(literals)),
      free_(std::move(free)),
      fixed_(std::move(fixed)),
      prior_(std::move(prior)),
      default_prior_(default_prior),
      observations_(std::move(observations)) {
  if (prior_.size() != free_.size()) throw ProblemError("need one prior per free literal");
  const std::set<Literal> in_play(literals_.begin(), literals_.end());
  std::set<Literal> seen;
  for (const Literal& l : free_) {
    if (in_play.count(l) == 0) throw ProblemError("free literal " + l.to_string() + " not in play");
    if (!seen.insert(l).second) throw ProblemError("free literal " + l.to_string() + " repeated");
    if (fixed_.count(l) != 0) {
      throw ProblemError("free literal " + l.to_string() + " also has a fixed utility");
    }
  }
  for (const auto& [l, u] : fixed_) {
    if (in_play.count(l) == 0) throw ProblemError("fixed literal " + l.to_string() + " not in play");
    if (!std::isfinite(u)) throw ProblemError("fixed utility of " + l.to_string() + " not finite");
  }
  for (const GaussianPrior& p : prior_) validate(p);
  validate(default_prior_);
  for (const Observation& o : observations_) {
    validate(o);
    for (const Literal& l : mentioned_literals(o)) {
      if (seen.count(l) == 0 && fixed_.count(l) == 0) {
        throw ObservationError("observation mentions " + l.to_string() +
                               ", which is neither free nor fixed");
      }
    }
  }
}

std::vector<double> FlatProblem::prior_means() const {
  std::vector<double> out;
  for (const GaussianPrior& p : prior_) out.push_back(p.mean);
  return out;
}

bool FlatProblem::observed(const Literal& literal) const {
  for (const Observation& o : observations_) {
    const auto mentioned = mentioned_literals(o);
    if (std::find(mentioned.begin(), mentioned.end(), literal) != mentioned.end()) return true;
  }
  return false;
}

double FlatProblem::utility(const Literal& literal, std::span<const double> u_free) const {
  const std::size_t i = free_index(*this, literal);
  if (i < free_.size()) return u_free[i];
  const auto it = fixed_.find(literal);
  if (it == fixed_.end()) {
    throw ProblemError("utility of " + literal.to_string() + " is neither free nor fixed");
  }
  return it->second;
}

double baseline_log_likelihood(const FlatProblem& problem, std::span<const double> u_free) {
  if (u_free.size() != problem.free().size()) {
    throw ProblemError("expected one utility per free literal");
  }
  const auto value = [&](const Literal& l) { return problem.utility(l, u_free); };
  double total = 0.0;
  for (const Observation& o : problem.observations()) {
    total += observation_log_likelihood(o, value);
  }
  return total;
}

double baseline_log_posterior(const FlatProblem& problem, std::span<const double> u_free) {
  double lp = baseline_log_likelihood(problem, u_free);
  for (std::size_t i = 0; i < u_free.size(); ++i) lp += problem.prior()[i].log_density(u_free[i]);
  return lp;
}

PosteriorSamples baseline_posterior(const FlatProblem& problem, const McmcConfig& config,
                                    std::uint64_t seed) {
  return random_walk_metropolis(
      problem.free(), problem.prior_means(),
      [&problem](std::span<const double> u) { return baseline_log_posterior(problem, u); }, config,
      seed);
}

GridPosterior baseline_grid_posterior(const FlatProblem& problem, std::span<const GridAxis> axes) {
  return grid_posterior(problem.free(), axes, [&problem](std::span<const double> u) {
    return baseline_log_posterior(problem, u);
  });
}

PredictiveSummary baseline_prior_predictive(const FlatProblem& problem, const Literal& target) {
  require_in_play(problem, target);
  if (const auto it = problem.fixed().find(target); it != problem.fixed().end()) {
    return gaussian_summary(target, it->second, 0.0);
  }
  const std::size_t i = free_index(problem, target);
  const GaussianPrior& p = i < problem.free().size() ? problem.prior()[i] : problem.default_prior();
  return gaussian_summary(target, p.mean, p.sd);
}

PredictiveSummary baseline_predict(const FlatProblem& problem, const PosteriorSamples& posterior,
                                   const Literal& target) {
  require_in_play(problem, target);
  const std::size_t i = free_index(problem, target);
  if (i == problem.free().size() || !problem.observed(target)) {
    return baseline_prior_predictive(problem, target);
  }
  return summarize(target, posterior.column(i));
}

PredictiveSummary baseline_predict(const FlatProblem& problem, const GridPosterior& posterior,
                                   const Literal& target) {
  require_in_play(problem, target);
  const std::size_t i = free_index(problem, target);
  if (i == problem.free().size() || !problem.observed(target)) {
    return baseline_prior_predictive(problem, target);
  }
  return summarize(target, posterior.axes[i], posterior.marginal(i));
}

double prior_divergence(const PredictiveSummary& posterior, const PredictiveSummary& prior) {
  const double var = prior.sd * prior.sd;
  if (var == 0.0) return 0.0;
  const double dm = posterior.mean - prior.mean;
  const double ds = posterior.sd - prior.sd;
  return (dm * dm + ds * ds) / var;
}

namespace {

template <class GenerativeFn, class BaselineFn>
GapReport run_gap(const InferenceProblem& generative, const FlatProblem& flat,
                  const Literal& target, GenerativeFn&& run_generative, BaselineFn&& run_baseline) {
  const PredictiveSummary generative_prior = prior_predictive(generative, target);
  const PredictiveSummary baseline_prior = baseline_prior_predictive(flat, target);

  GapReport report;
  report.target = target;
  std::future<PredictiveSummary> pending;
  if (!generative.observations().empty()) {
    pending = std::async(std::launch::async, run_generative);
  }
  report.baseline = flat.observations().empty() ? baseline_prior : run_baseline();
  report.generative = pending.valid() ? pending.get() : generative_prior;
  report.generative_prior_divergence = prior_divergence(report.generative, generative_prior);
  report.baseline_prior_divergence = prior_divergence(report.baseline, baseline_prior);
  return report;
}

}  // namespace

GapReport generalization_gap(const InferenceProblem& generative, const FlatProblem& flat,
                             const Literal& target, const McmcConfig& config, std::uint64_t seed) {
  config.validate();
  return run_gap(
      generative, flat, target,
      [&] { return predict_value(generative, mh_sample(generative, config, seed), target); },
      [&] { return baseline_predict(flat, baseline_posterior(flat, config, seed), target); });
}

GapReport generalization_gap(const InferenceProblem& generative, const FlatProblem& flat,
                             const Literal& target, std::span<const GridAxis> axes) {
  return run_gap(
      generative, flat, target,
      [&] { return predict_value(generative, grid_posterior(generative, axes), target); },
      [&] { return baseline_predict(flat, baseline_grid_posterior(flat, axes), target); });
}

}  // namespace valgraph
