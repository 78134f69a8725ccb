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

// Flat-utility baseline. Each literal carries an independent utility u that
// stands in for both reward and value; there is no world model linking
// them. Observations and likelihoods are the ones the generative learner
// uses, so a comparison isolates the instrumental structure alone.

#ifndef VALGRAPH_BASELINE_HPP_
#define VALGRAPH_BASELINE_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "valgraph/inference.hpp"
#include "valgraph/observation.hpp"
#include "valgraph/posterior.hpp"

namespace valgraph {

class FlatProblem {
 public:
  /// `literals` is everything in play. Observations may only mention free or
  /// fixed literals; literals that are neither keep `default_prior`.
  /// Throws ProblemError and ObservationError.
  FlatProblem(std::vector<Literal> literals, std::vector<Literal> free,
              std::map<Literal, double> fixed, std::vector<GaussianPrior> prior,
              GaussianPrior default_prior, std::vector<Observation> observations);

  const std::vector<Literal>& literals() const noexcept { return literals_; }
  const std::vector<Literal>& free() const noexcept { return free_; }
  const std::map<Literal, double>& fixed() const noexcept { return fixed_; }
  const std::vector<GaussianPrior>& prior() const noexcept { return prior_; }
  const GaussianPrior& default_prior() const noexcept { return default_prior_; }
  const std::vector<Observation>& observations() const noexcept { return observations_; }

  std::vector<double> prior_means() const;
  /// True when some observation mentions `literal`.
  bool observed(const Literal& literal) const;
  /// Utility of `literal` with the free coordinates set to `u_free`.
  double utility(const Literal& literal, std::span<const double> u_free) const;

 private:
  std::vector<Literal> literals_;
  std::vector<Literal> free_;
  std::map<Literal, double> fixed_;
  std::vector<GaussianPrior> prior_;
  GaussianPrior default_prior_;
  std::vector<Observation> observations_;
};

double baseline_log_likelihood(const FlatProblem& problem, std::span<const double> u_free);
double baseline_log_posterior(const FlatProblem& problem, std::span<const double> u_free);

PosteriorSamples baseline_posterior(const FlatProblem& problem, const McmcConfig& config,
                                    std::uint64_t seed);
GridPosterior baseline_grid_posterior(const FlatProblem& problem, std::span<const GridAxis> axes);

/// Predictive utility of `target`. A literal no observation mentions keeps
/// its prior exactly, since the likelihood is constant in its coordinate.
PredictiveSummary baseline_predict(const FlatProblem& problem, const PosteriorSamples& posterior,
                                   const Literal& target);
PredictiveSummary baseline_predict(const FlatProblem& problem, const GridPosterior& posterior,
                                   const Literal& target);
PredictiveSummary baseline_prior_predictive(const FlatProblem& problem, const Literal& target);

struct GapReport {
  Literal target;
  PredictiveSummary generative;
  PredictiveSummary baseline;
  double baseline_prior_divergence = 0.0;
  double generative_prior_divergence = 0.0;
};

/// ((mean - prior mean)^2 + (sd - prior sd)^2) / prior variance. Zero when
/// the prior is a point mass, since the posterior then equals it.
double prior_divergence(const PredictiveSummary& posterior, const PredictiveSummary& prior);

/// Runs both learners on the same evidence (concurrently) and measures how
/// far each moves its prediction for `target` away from its prior. With no
/// observations both posteriors are the priors and are not sampled.
GapReport generalization_gap(const InferenceProblem& generative, const FlatProblem& flat,
                             const Literal& target, const McmcConfig& config, std::uint64_t seed);
GapReport generalization_gap(const InferenceProblem& generative, const FlatProblem& flat,
                             const Literal& target, std::span<const GridAxis> axes);

}  // namespace valgraph

#endif  // VALGRAPH_BASELINE_HPP_
