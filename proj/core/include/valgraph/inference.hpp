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

// Inverse value inference: a posterior over unknown intrinsic rewards given
// stated values and observed choices, scored through the forward value
// engine, and predictive value distributions for arbitrary literals.

#ifndef VALGRAPH_INFERENCE_HPP_
#define VALGRAPH_INFERENCE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "valgraph/observation.hpp"
#include "valgraph/posterior.hpp"
#include "valgraph/value_engine.hpp"
#include "valgraph/world_model.hpp"

namespace valgraph {

class InferenceProblem {
 public:
  /// Throws ProblemError (free literal fixed or repeated, prior count
  /// mismatch, bad prior, literal outside the model) and ObservationError.
  InferenceProblem(WorldModel model, RewardTable fixed_rewards, std::vector<Literal> free,
                   std::vector<GaussianPrior> prior, std::vector<Observation> observations);

  const WorldModel& model() const noexcept { return model_; }
  const RewardTable& fixed_rewards() const noexcept { return fixed_; }
  const std::vector<Literal>& free() const noexcept { return free_; }
  const std::vector<GaussianPrior>& prior() const noexcept { return prior_; }
  const std::vector<Observation>& observations() const noexcept { return observations_; }

  /// Fixed rewards plus `r_free` assigned to the free literals.
  RewardTable rewards_at(std::span<const double> r_free) const;
  std::vector<double> prior_means() const;

 private:
  WorldModel model_;
  RewardTable fixed_;
  std::vector<Literal> free_;
  std::vector<GaussianPrior> prior_;
  std::vector<Observation> observations_;
};

double log_likelihood(const InferenceProblem& problem, std::span<const double> r_free);

/// Log likelihood plus independent Gaussian log priors; unnormalized.
double log_posterior(const InferenceProblem& problem, std::span<const double> r_free);

/// Random-walk Metropolis-Hastings over the free rewards, started at the
/// prior means.
PosteriorSamples mh_sample(const InferenceProblem& problem, const McmcConfig& config,
                           std::uint64_t seed);

GridPosterior grid_posterior(const InferenceProblem& problem, std::span<const GridAxis> axes);

/// Pushes every posterior draw (or mass-weighted grid point) through the
/// value engine and summarizes V(target).
PredictiveSummary predict_value(const InferenceProblem& problem, const PosteriorSamples& posterior,
                                const Literal& target);
PredictiveSummary predict_value(const InferenceProblem& problem, const GridPosterior& posterior,
                                const Literal& target);

/// Exact prior pushforward of V(target). Values are affine in the reward
/// table, so the pushforward of the Gaussian prior is Gaussian.
PredictiveSummary prior_predictive(const InferenceProblem& problem, const Literal& target);

}  // namespace valgraph

#endif  // VALGRAPH_INFERENCE_HPP_
