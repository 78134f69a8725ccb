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

#ifndef VALGRAPH_TESTS_FIXTURES_HPP_
#define VALGRAPH_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <string>

#include "valgraph/valgraph.hpp"

namespace valgraph::testing {

inline Literal lit(const std::string& text) { return Literal::parse(text); }

/// random-k for k cycling through 1..max_k, seeded by `i`.
inline Scenario random_case(std::size_t i, std::size_t max_k = 6) {
  return builtin_scenario("random-" + std::to_string(1 + i % max_k), ScenarioOptions{i, 1});
}

/// Copy of `model` with every CPT entry of variable `v` redrawn.
inline WorldModel with_redrawn_cpt(const WorldModel& model, std::size_t v, std::mt19937_64& rng) {
  ModelSpec spec = model.to_spec();
  for (CptRow& row : spec.variables[v].cpt) {
    row.p_true = static_cast<double>(rng() % 1001) / 1000.0;
  }
  return build_model(spec, model.enumeration_cap());
}

/// Random reward table over every literal, values in [-10, 10].
inline RewardTable random_rewards(const WorldModel& model, std::mt19937_64& rng) {
  RewardTable r;
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (const Literal& l : all_literals(model)) r.set(l, u(rng));
  return r;
}

inline InferenceProblem generalize_problem(std::size_t choices) {
  const Scenario s = builtin_scenario("generalize", ScenarioOptions{0, choices});
  return make_inference_problem(s.bundle, s.observations);
}

inline FlatProblem generalize_flat(std::size_t choices) {
  const Scenario s = builtin_scenario("generalize", ScenarioOptions{0, choices});
  return make_flat_problem(s.bundle, s.observations);
}

}  // namespace valgraph::testing

#endif  // VALGRAPH_TESTS_FIXTURES_HPP_
