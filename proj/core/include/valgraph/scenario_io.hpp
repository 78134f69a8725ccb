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

// JSON model and observation files, and the built-in scenarios.
//
// Model file:
//
//   {
//     "controllable": ["Vaccinated"],
//     "format_version": 1,
//     "rewards": {"Flu=true": -10.0},
//     "variables": [
//       {"cpt": [{"given": {}, "p_true": 0.5}], "name": "Vaccinated", "parents": []},
//       {"cpt": [{"given": {"Vaccinated": true}, "p_true": 0.1},
//                {"given": {"Vaccinated": false}, "p_true": 0.5}],
//        "name": "Flu", "parents": ["Vaccinated"]}
//     ]
//   }
//
// Observation file:
//
//   {
//     "format_version": 1,
//     "inference": {"baseline_fixed": {"Vaccinated=false": 0.0}, "beta": 1.0,
//                   "free": ["Flu=true"], "prior_mean": 0.0, "prior_sd": 5.0,
//                   "sigma": 1.0},
//     "observations": [
//       {"beta": 1.0, "chosen": "Vaccinated=true",
//        "options": ["Vaccinated=true", "Vaccinated=false"], "type": "choice"},
//       {"literal": "Flu=true", "reported": -9.0, "sigma": 1.0, "type": "value_report"}
//     ]
//   }
//
// A single document may carry both sets of keys; each parser ignores the
// other's. Emission is canonical: sorted keys, two-space indentation, CPT
// rows in canonical order, numbers rounded to 12 significant digits.

#ifndef VALGRAPH_SCENARIO_IO_HPP_
#define VALGRAPH_SCENARIO_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "valgraph/baseline.hpp"
#include "valgraph/inference.hpp"
#include "valgraph/observation.hpp"
#include "valgraph/value_engine.hpp"
#include "valgraph/world_model.hpp"

namespace valgraph {

struct ModelBundle {
  WorldModel model;
  RewardTable rewards;
};

struct InferenceSettings {
  std::vector<Literal> free;
  double prior_mean = 0.0;
  double prior_sd = 5.0;
  /// Defaults applied to records that omit `beta` / `sigma`.
  double beta = 1.0;
  double sigma = 1.0;
  /// Utilities the flat baseline treats as known (e.g. a zero anchor for
  /// the "do nothing" option).
  std::map<Literal, double> baseline_fixed;
};

struct ObservationSet {
  std::vector<Observation> observations;
  InferenceSettings inference;
};

struct Scenario {
  std::string name;
  ModelBundle bundle;
  ObservationSet observations;
};

/// Throws ParseError (with line and column for syntax errors, or the JSON
/// path for schema errors) and the build_model errors.
ModelBundle parse_model(std::string_view text,
                        std::size_t enumeration_cap = WorldModel::kDefaultEnumerationCap);
std::string emit_model(const WorldModel& model, const RewardTable& rewards);

/// Literals are resolved against `model`; throws ParseError and
/// ObservationError.
ObservationSet parse_observations(std::string_view text, const WorldModel& model);
std::string emit_observations(const ObservationSet& observations);

/// Model and observation keys in one canonical document.
std::string emit_scenario(const Scenario& scenario);

struct ScenarioOptions {
  /// Seed for `random-k`.
  std::uint64_t seed = 0;
  /// Number of repeated vaccination choices in `generalize`.
  std::size_t choices = 1;
};

/// One of `miriam`, `immune`, `chain`, `generalize`, `random-k` (1 <= k <= 8).
/// Throws UnknownScenarioError.
Scenario builtin_scenario(std::string_view name, const ScenarioOptions& options = {});
std::vector<std::string> builtin_scenario_names();

/// Generative problem: the file's free literals get the shared prior and are
/// dropped from the model's fixed rewards.
InferenceProblem make_inference_problem(const ModelBundle& bundle, const ObservationSet& set);

/// Flat problem over every model literal. Literals mentioned by observations
/// and not in `baseline_fixed` are free.
FlatProblem make_flat_problem(const ModelBundle& bundle, const ObservationSet& set);

}  // namespace valgraph

#endif  // VALGRAPH_SCENARIO_IO_HPP_
