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

#include "valgraph/value_engine.hpp"

#include <algorithm>
#include <cmath>

#include "valgraph/errors.hpp"

namespace valgraph {

namespace {

// Expected value of child `x` when `o`'s variable is clamped to `polarity`.
double child_expectation(const WorldModel& model, double v_true, double v_false,
                         std::size_t o, bool polarity, std::size_t x) {
  const Literal intervention{model.variables()[o], polarity};
  const double p = interventional_prob(model, Literal{model.variables()[x], true}, intervention);
  return v_true * p + v_false * (1.0 - p);
}

void require_child(const WorldModel& model, std::size_t o, std::size_t x) {
  const auto children = model.children(o);
  if (std::find(children.begin(), children.end(), x) == children.end()) {
    throw NotAChildError("'" + model.variables()[x].str() + "' is not a direct child of '" +
                         model.variables()[o].str() + "'");
  }
}

}  // namespace

RewardTable::RewardTable(std::initializer_list<std::pair<const Literal, double>> entries) {
  for (const auto& [literal, value] : entries) set(literal, value);
}

void RewardTable::set(const Literal& literal, double value) {
  if (!std::isfinite(value)) {
    throw InvalidValueError("reward for " + literal.to_string() + " is not finite");
  }
  entries_[literal] = value;
}

double RewardTable::get(const Literal& literal) const {
  const auto it = entries_.find(literal);
  return it == entries_.end() ? 0.0 : it->second;
}

RewardTable RewardTable::scaled(double c) const {
  RewardTable out;
  for (const auto& [literal, value] : entries_) out.set(literal, c * value);
  return out;
}

RewardTable operator+(const RewardTable& a, const RewardTable& b) {
  RewardTable out = a;
  for (const auto& [literal, value] : b.entries_) out.set(literal, out.get(literal) + value);
  return out;
}

double ValueTable::at(const Literal& literal) const {
  const auto it = lookup_.find(literal);
  if (it == lookup_.end()) {
    throw UnknownVariableError("no value for " + literal.to_string());
  }
  return it->second;
}

ValueTable evaluate_values(const WorldModel& model, const RewardTable& rewards) {
  const std::size_t n = model.size();
  const auto& ids = model.variables();
  std::vector<double> v_true(n, 0.0), v_false(n, 0.0);

  const auto& topo = model.topological_indices();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const std::size_t o = *it;
    double instrumental = 0.0;
    for (std::size_t x : model.children(o)) {
      instrumental += child_expectation(model, v_true[x], v_false[x], o, true, x) -
                      child_expectation(model, v_true[x], v_false[x], o, false, x);
    }
    v_true[o] = rewards.get(Literal{ids[o], true}) + instrumental;
    v_false[o] = rewards.get(Literal{ids[o], false}) - instrumental;
  }

  ValueTable table;
  table.ordered_.reserve(2 * n);
  for (std::size_t v = 0; v < n; ++v) {
    table.ordered_.emplace_back(Literal{ids[v], true}, v_true[v]);
    table.ordered_.emplace_back(Literal{ids[v], false}, v_false[v]);
  }
  for (const auto& [literal, value] : table.ordered_) {
    if (!std::isfinite(value)) {
      throw InvalidValueError("value of " + literal.to_string() + " is not finite");
    }
    table.lookup_.emplace(literal, value);
  }
  return table;
}

double expected_value(const WorldModel& model, const ValueTable& values, const Literal& o,
                      const VariableId& x) {
  const std::size_t ov = model.index_of(o.variable);
  const std::size_t xv = model.index_of(x);
  require_child(model, ov, xv);
  return child_expectation(model, values.at(Literal{x, true}), values.at(Literal{x, false}), ov,
                           o.polarity, xv);
}

double impact(const WorldModel& model, const ValueTable& values, const Literal& o,
              const VariableId& x) {
  return expected_value(model, values, o, x) - expected_value(model, values, o.complement(), x);
}

ValueExplanation explain_value(const WorldModel& model, const RewardTable& rewards,
                               const Literal& o) {
  const std::size_t ov = model.index_of(o.variable);
  const ValueTable values = evaluate_values(model, rewards);
  ValueExplanation out;
  out.literal = o;
  out.intrinsic = rewards.get(o);
  for (std::size_t x : model.children(ov)) {
    out.contributions.emplace_back(model.variables()[x],
                                   impact(model, values, o, model.variables()[x]));
  }
  out.total = values.at(o);
  return out;
}

}  // namespace valgraph
