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

// Causal world model: a Bayesian network over binary variables that answers
// observational (joint) and interventional (do-surgery) probability queries
// exactly, by enumeration.

#ifndef VALGRAPH_WORLD_MODEL_HPP_
#define VALGRAPH_WORLD_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace valgraph {

/// Name of a network variable. Nonempty, and free of the characters that
/// delimit literal strings and CSV fields (`=`, `,`, newlines).
class VariableId {
 public:
  VariableId() = default;
  explicit VariableId(std::string name);

  const std::string& str() const noexcept { return name_; }

  friend auto operator<=>(const VariableId&, const VariableId&) = default;
  friend bool operator==(const VariableId&, const VariableId&) = default;

 private:
  std::string name_;
};

/// An outcome: a variable fixed to one polarity. Written `Name=true` or
/// `Name=false` everywhere it crosses a file or command-line boundary.
struct Literal {
  VariableId variable;
  bool polarity = true;

  Literal complement() const { return Literal{variable, !polarity}; }
  std::string to_string() const;

  /// Parses the exact form `Name=true|false`. Throws ParseError otherwise.
  static Literal parse(std::string_view text);

  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// One row of a conditional probability table, keyed by a total assignment
/// of the variable's parents.
struct CptRow {
  std::map<VariableId, bool> given;
  double p_true = 0.0;

  friend bool operator==(const CptRow&, const CptRow&) = default;
};

struct VariableSpec {
  VariableId name;
  std::vector<VariableId> parents;
  std::vector<CptRow> cpt;
};

/// Raw, unvalidated model description; `build_model` turns it into a
/// WorldModel or reports what is wrong with it.
struct ModelSpec {
  std::vector<VariableSpec> variables;
  std::vector<VariableId> controllable;
};

/// Total assignment of polarities to the model's variables.
using Assignment = std::map<VariableId, bool>;

class WorldModel {
 public:
  static constexpr std::size_t kDefaultEnumerationCap = 20;

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<VariableId>& variables() const noexcept { return ids_; }

  std::optional<std::size_t> find(const VariableId& id) const;
  /// Throws UnknownVariableError.
  std::size_t index_of(const VariableId& id) const;

  std::span<const std::size_t> parents(std::size_t v) const { return parents_[v]; }
  std::span<const std::size_t> children(std::size_t v) const { return children_[v]; }

  /// P(v = true | parent configuration). Bit (k-1-j) of `config` holds the
  /// polarity of the j-th parent, so the first parent is most significant.
  double p_true(std::size_t v, std::uint64_t config) const { return cpts_[v][config]; }
  std::span<const double> cpt_table(std::size_t v) const { return cpts_[v]; }

  /// CPT rows of `v` in canonical order: from all parents true down to all
  /// parents false, first parent most significant.
  std::vector<CptRow> cpt_rows(std::size_t v) const;

  bool is_controllable(std::size_t v) const { return controllable_[v]; }
  std::vector<VariableId> controllable() const;

  /// Parents before children; ties broken by declaration order.
  const std::vector<std::size_t>& topological_indices() const noexcept { return topo_; }

  std::size_t enumeration_cap() const noexcept { return cap_; }
  WorldModel with_enumeration_cap(std::size_t cap) const;

  /// The description this model was built from, in canonical row order.
  ModelSpec to_spec() const;

  /// Structural equality; the enumeration cap is a query setting and is
  /// not compared.
  friend bool operator==(const WorldModel& a, const WorldModel& b);

 private:
  friend WorldModel build_model(const ModelSpec& spec, std::size_t enumeration_cap);
  friend WorldModel do_surgery(const WorldModel& model, const Literal& intervention);

  void link();

  std::vector<VariableId> ids_;
  std::map<VariableId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<double>> cpts_;
  std::vector<bool> controllable_;
  std::vector<std::size_t> topo_;
  std::size_t cap_ = kDefaultEnumerationCap;
};

/// Validates and builds a model. Throws CycleError, CptError,
/// UnknownVariableError or DuplicateVariableError.
WorldModel build_model(const ModelSpec& spec,
                       std::size_t enumeration_cap = WorldModel::kDefaultEnumerationCap);

std::vector<VariableId> topological_order(const WorldModel& model);

/// Both literals of every variable, declaration order, `true` first.
std::vector<Literal> all_literals(const WorldModel& model);

/// Product of the CPT entries selected by a total assignment.
double joint_probability(const WorldModel& model, const Assignment& assignment);

/// Same, with bit i of `bits` holding the polarity of variable i.
double joint_probability(const WorldModel& model, std::uint64_t bits);

/// Graph surgery: the intervened variable loses its parents and becomes a
/// point mass on the literal's polarity. Other variables are untouched.
WorldModel do_surgery(const WorldModel& model, const Literal& intervention);

/// P(target | do(intervention)). Exact; the sum runs over the target's
/// ancestors in the surgered graph. Throws SameVariableError and
/// ModelTooLargeError.
double interventional_prob(const WorldModel& model, const Literal& target,
                           const Literal& intervention);

}  // namespace valgraph

#endif  // VALGRAPH_WORLD_MODEL_HPP_
