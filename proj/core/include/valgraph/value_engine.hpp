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

// Forward value propagation. The total value of a literal is its intrinsic
// reward plus, for every direct child x of its variable, the difference in
// expected value of x between intervening on the literal and intervening on
// its complement:
//
//   V(o) = r(o) + sum_x ( E[V(x) | do(o)] - E[V(x) | do(not o)] )
//
// where E[V(x) | do(o)] = V(x) P(x | do(o)) + V(not x) P(not x | do(o)).
// Child values are context-free, so the table is filled in reverse
// topological order with no fixed-point iteration.

#ifndef VALGRAPH_VALUE_ENGINE_HPP_
#define VALGRAPH_VALUE_ENGINE_HPP_

#include <map>
#include <utility>
#include <vector>

#include "valgraph/world_model.hpp"

namespace valgraph {

/// Intrinsic reward per literal. Literals without an entry are worth 0.
class RewardTable {
 public:
  RewardTable() = default;
  RewardTable(std::initializer_list<std::pair<const Literal, double>> entries);

  /// Throws InvalidValueError for non-finite values.
  void set(const Literal& literal, double value);
  void erase(const Literal& literal) { entries_.erase(literal); }
  double get(const Literal& literal) const;
  bool contains(const Literal& literal) const { return entries_.count(literal) != 0; }
  const std::map<Literal, double>& entries() const noexcept { return entries_; }

  RewardTable scaled(double c) const;
  friend RewardTable operator+(const RewardTable& a, const RewardTable& b);
  friend bool operator==(const RewardTable&, const RewardTable&) = default;

 private:
  std::map<Literal, double> entries_;
};

/// Total value of both literals of every variable in a model.
class ValueTable {
 public:
  /// Throws UnknownVariableError for literals outside the model.
  double at(const Literal& literal) const;
  /// Literals in declaration order, `true` first.
  const std::vector<std::pair<Literal, double>>& entries() const noexcept { return ordered_; }

 private:
  friend ValueTable evaluate_values(const WorldModel& model, const RewardTable& rewards);
  std::vector<std::pair<Literal, double>> ordered_;
  std::map<Literal, double> lookup_;
};

struct ValueExplanation {
  Literal literal;
  double intrinsic = 0.0;
  std::vector<std::pair<VariableId, double>> contributions;
  double total = 0.0;
};

ValueTable evaluate_values(const WorldModel& model, const RewardTable& rewards);

/// V(x) P(x | do(o)) + V(not x) P(not x | do(o)). Throws NotAChildError
/// unless `x` is a direct child of `o`'s variable.
double expected_value(const WorldModel& model, const ValueTable& values, const Literal& o,
                      const VariableId& x);

/// expected_value(o, x) - expected_value(not o, x).
double impact(const WorldModel& model, const ValueTable& values, const Literal& o,
              const VariableId& x);

/// Intrinsic part plus one impact term per direct child.
ValueExplanation explain_value(const WorldModel& model, const RewardTable& rewards,
                               const Literal& o);

}  // namespace valgraph

#endif  // VALGRAPH_VALUE_ENGINE_HPP_
