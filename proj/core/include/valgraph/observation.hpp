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

// Evidence about an agent's values and the likelihoods shared by the
// generative learner and the flat-utility baseline. Both learners score the
// same observations; they differ only in how a literal's value is computed.

#ifndef VALGRAPH_OBSERVATION_HPP_
#define VALGRAPH_OBSERVATION_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "valgraph/world_model.hpp"

namespace valgraph {

/// A stated valuation, Gaussian-noisy around the true value of `literal`.
struct ValueReport {
  Literal literal;
  double reported = 0.0;
  double sigma = 1.0;
};

/// A softmax-rational choice among intervention options.
struct ChoiceObservation {
  std::vector<Literal> options;
  Literal chosen;
  double beta = 1.0;
};

using Observation = std::variant<ValueReport, ChoiceObservation>;

struct GaussianPrior {
  double mean = 0.0;
  double sd = 5.0;

  double log_density(double x) const {
    const double z = (x - mean) / sd;
    return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
  }
};

/// Throws ObservationError: sigma or beta not positive, non-finite scalars,
/// fewer than two options, repeated options, chosen not among options.
void validate(const Observation& observation);

/// `validate`, plus every literal must name a model variable and choice
/// options must be over controllable variables.
void validate(const Observation& observation, const WorldModel& model);

/// Literals the observation refers to.
std::vector<Literal> mentioned_literals(const Observation& observation);

/// Throws ProblemError when sd is not positive or a scalar is not finite.
void validate(const GaussianPrior& prior);

/// Log of the softmax probability of `option`, computed with the maximum
/// exponent subtracted.
template <class ValueFn>
double choice_log_probability(const ChoiceObservation& choice, const Literal& option,
                              ValueFn&& value) {
  double top = -INFINITY;
  std::vector<double> scaled;
  scaled.reserve(choice.options.size());
  double picked = 0.0;
  for (const Literal& l : choice.options) {
    const double s = choice.beta * value(l);
    scaled.push_back(s);
    top = std::max(top, s);
    if (l == option) picked = s;
  }
  double sum = 0.0;
  for (double s : scaled) sum += std::exp(s - top);
  return picked - top - std::log(sum);
}

template <class ValueFn>
double observation_log_likelihood(const Observation& observation, ValueFn&& value) {
  if (const auto* report = std::get_if<ValueReport>(&observation)) {
    const double z = (report->reported - value(report->literal)) / report->sigma;
    return -0.5 * z * z - std::log(report->sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  const auto& choice = std::get<ChoiceObservation>(observation);
  return choice_log_probability(choice, choice.chosen, value);
}

}  // namespace valgraph

#endif  // VALGRAPH_OBSERVATION_HPP_
