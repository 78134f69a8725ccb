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

#include "valgraph/observation.hpp"

#include <set>
#include <string>

#include "valgraph/errors.hpp"

namespace valgraph {

void validate(const Observation& observation) {
  if (const auto* report = std::get_if<ValueReport>(&observation)) {
    if (!std::isfinite(report->reported)) {
      throw ObservationError("value report for " + report->literal.to_string() +
                             " is not finite");
    }
    if (!std::isfinite(report->sigma) || report->sigma <= 0.0) {
      throw ObservationError("value report for " + report->literal.to_string() +
                             " needs sigma > 0");
    }
    return;
  }
  const auto& choice = std::get<ChoiceObservation>(observation);
  if (!std::isfinite(choice.beta) || choice.beta <= 0.0) {
    throw ObservationError("choice needs beta > 0");
  }
  if (choice.options.size() < 2) {
    throw ObservationError("choice needs at least two options");
  }
  std::set<Literal> seen;
  for (const Literal& l : choice.options) {
    if (!seen.insert(l).second) {
      throw ObservationError("choice lists option " + l.to_string() + " twice");
    }
  }
  if (seen.count(choice.chosen) == 0) {
    throw ObservationError("chosen " + choice.chosen.to_string() + " is not among the options");
  }
}

void validate(const Observation& observation, const WorldModel& model) {
  validate(observation);
  for (const Literal& l : mentioned_literals(observation)) {
    if (!model.find(l.variable)) {
      throw ObservationError("observation refers to unknown variable '" + l.variable.str() +
                             "'");
    }
  }
  if (const auto* choice = std::get_if<ChoiceObservation>(&observation)) {
    for (const Literal& l : choice->options) {
      if (!model.is_controllable(model.index_of(l.variable))) {
        throw ObservationError("choice option " + l.to_string() +
                               " is not over a controllable variable");
      }
    }
  }
}

std::vector<Literal> mentioned_literals(const Observation& observation) {
  if (const auto* report = std::get_if<ValueReport>(&observation)) return {report->literal};
  return std::get<ChoiceObservation>(observation).options;
}

void validate(const GaussianPrior& prior) {
  if (!std::isfinite(prior.mean)) throw ProblemError("prior mean is not finite");
  if (!std::isfinite(prior.sd) || prior.sd <= 0.0) throw ProblemError("prior sd must be > 0");
}

}  // namespace valgraph
