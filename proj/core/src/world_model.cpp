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

#include "valgraph/world_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "valgraph/errors.hpp"

namespace valgraph {

namespace {

constexpr std::size_t kMaxParents = 30;

std::string quoted(const VariableId& id) { return "'" + id.str() + "'"; }

std::uint64_t parent_config(const WorldModel& model, std::size_t v,
                            const std::vector<char>& state) {
  const auto parents = model.parents(v);
  std::uint64_t config = 0;
  for (std::size_t p : parents) config = (config << 1) | (state[p] ? 1u : 0u);
  return config;
}

}  // namespace

VariableId::VariableId(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw InvalidValueError("variable name must be nonempty");
  if (name_.find_first_of("=,\n\r") != std::string::npos) {
    throw InvalidValueError("variable name '" + name_ +
                            "' contains a reserved character");
  }
}

std::string Literal::to_string() const {
  return variable.str() + (polarity ? "=true" : "=false");
}

Literal Literal::parse(std::string_view text) {
  const auto eq = text.rfind('=');
  if (eq == std::string_view::npos) {
    throw ParseError("literal '" + std::string(text) +
                     "' must have the form Name=true or Name=false");
  }
  const std::string_view value = text.substr(eq + 1);
  bool polarity;
  if (value == "true") {
    polarity = true;
  } else if (value == "false") {
    polarity = false;
  } else {
    throw ParseError("literal '" + std::string(text) +
                     "' must end in =true or =false");
  }
  try {
    return Literal{VariableId(std::string(text.substr(0, eq))), polarity};
  } catch (const InvalidValueError& e) {
    throw ParseError("literal '" + std::string(text) + "': " + e.what());
  }
}

std::optional<std::size_t> WorldModel::find(const VariableId& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t WorldModel::index_of(const VariableId& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw UnknownVariableError("unknown variable " + quoted(id));
  }
  return it->second;
}

std::vector<CptRow> WorldModel::cpt_rows(std::size_t v) const {
  const auto& parents = parents_[v];
  const std::size_t k = parents.size();
  const std::uint64_t rows = std::uint64_t{1} << k;
  std::vector<CptRow> out;
  out.reserve(rows);
  for (std::uint64_t r = 0; r < rows; ++r) {
    const std::uint64_t config = rows - 1 - r;
    CptRow row;
    for (std::size_t j = 0; j < k; ++j) {
      row.given[ids_[parents[j]]] = ((config >> (k - 1 - j)) & 1u) != 0;
    }
    row.p_true = cpts_[v][config];
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<VariableId> WorldModel::controllable() const {
  std::vector<VariableId> out;
  for (std::size_t v = 0; v < size(); ++v) {
    if (controllable_[v]) out.push_back(ids_[v]);
  }
  return out;
}

WorldModel WorldModel::with_enumeration_cap(std::size_t cap) const {
  WorldModel copy = *this;
  copy.cap_ = cap;
  return copy;
}

ModelSpec WorldModel::to_spec() const {
  ModelSpec spec;
  for (std::size_t v = 0; v < size(); ++v) {
    VariableSpec var;
    var.name = ids_[v];
    for (std::size_t p : parents_[v]) var.parents.push_back(ids_[p]);
    var.cpt = cpt_rows(v);
    spec.variables.push_back(std::move(var));
  }
  spec.controllable = controllable();
  return spec;
}

bool operator==(const WorldModel& a, const WorldModel& b) {
  return a.ids_ == b.ids_ && a.parents_ == b.parents_ && a.cpts_ == b.cpts_ &&
         a.controllable_ == b.controllable_;
}

// Derives children lists and the topological order from `parents_`. Throws
// CycleError when the parent graph is not a DAG.
void WorldModel::link() {
  const std::size_t n = ids_.size();
  children_.assign(n, {});
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t p : parents_[v]) children_[p].push_back(v);
  }

  // Kahn's algorithm, always releasing the earliest-declared ready variable.
  std::vector<std::size_t> pending(n);
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    pending[v] = parents_[v].size();
    if (pending[v] == 0) ready.insert(v);
  }
  topo_.clear();
  topo_.reserve(n);
  while (!ready.empty()) {
    const std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    topo_.push_back(v);
    for (std::size_t c : children_[v]) {
      if (--pending[c] == 0) ready.insert(c);
    }
  }
  if (topo_.size() != n) {
    for (std::size_t v = 0; v < n; ++v) {
      if (pending[v] != 0) {
        throw CycleError("parent graph has a cycle through " + quoted(ids_[v]));
      }
    }
  }
}

WorldModel build_model(const ModelSpec& spec, std::size_t enumeration_cap) {
  WorldModel m;
  m.cap_ = enumeration_cap;
  const std::size_t n = spec.variables.size();

  for (std::size_t v = 0; v < n; ++v) {
    const VariableId& id = spec.variables[v].name;
    if (id.str().empty()) throw InvalidValueError("variable name must be nonempty");
    if (!m.index_.emplace(id, v).second) {
      throw DuplicateVariableError("variable " + quoted(id) + " is declared twice");
    }
    m.ids_.push_back(id);
  }

  m.parents_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const VariableSpec& var = spec.variables[v];
    std::set<std::size_t> seen;
    for (const VariableId& p : var.parents) {
      const auto it = m.index_.find(p);
      if (it == m.index_.end()) {
        throw UnknownVariableError("variable " + quoted(var.name) +
                                   " names unknown parent " + quoted(p));
      }
      if (it->second == v) {
        throw CycleError("variable " + quoted(var.name) + " is its own parent");
      }
      if (!seen.insert(it->second).second) {
        throw CptError("variable " + quoted(var.name) + " lists parent " + quoted(p) +
                       " twice");
      }
      m.parents_[v].push_back(it->second);
    }
    if (m.parents_[v].size() > kMaxParents) {
      throw CptError("variable " + quoted(var.name) + " has too many parents");
    }
  }

  m.link();

  m.cpts_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const VariableSpec& var = spec.variables[v];
    const auto& parents = m.parents_[v];
    const std::size_t k = parents.size();
    const std::uint64_t rows = std::uint64_t{1} << k;
    std::vector<double> table(rows, 0.0);
    std::vector<bool> filled(rows, false);

    for (const CptRow& row : var.cpt) {
      if (!std::isfinite(row.p_true) || row.p_true < 0.0 || row.p_true > 1.0) {
        throw CptError("variable " + quoted(var.name) + ": p_true " +
                       std::to_string(row.p_true) + " is outside [0, 1]");
      }
      for (const auto& [name, value] : row.given) {
        const auto it = m.index_.find(name);
        if (it == m.index_.end()) {
          throw UnknownVariableError("variable " + quoted(var.name) +
                                     ": CPT row names unknown variable " + quoted(name));
        }
        if (std::find(parents.begin(), parents.end(), it->second) == parents.end()) {
          throw CptError("variable " + quoted(var.name) + ": CPT row conditions on " +
                         quoted(name) + ", which is not a parent");
        }
      }
      std::uint64_t config = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const auto it = row.given.find(m.ids_[parents[j]]);
        if (it == row.given.end()) {
          throw CptError("variable " + quoted(var.name) + ": CPT row does not assign parent " +
                         quoted(m.ids_[parents[j]]));
        }
        config = (config << 1) | (it->second ? 1u : 0u);
      }
      if (filled[config]) {
        throw CptError("variable " + quoted(var.name) + ": duplicate CPT row");
      }
      filled[config] = true;
      table[config] = row.p_true;
    }

    const auto missing = std::count(filled.begin(), filled.end(), false);
    if (missing != 0) {
      throw CptError("variable " + quoted(var.name) + ": CPT needs " + std::to_string(rows) +
                     " rows, " + std::to_string(missing) + " missing");
    }
    m.cpts_[v] = std::move(table);
  }

  m.controllable_.assign(n, false);
  for (const VariableId& id : spec.controllable) {
    const auto it = m.index_.find(id);
    if (it == m.index_.end()) {
      throw UnknownVariableError("controllable set names unknown variable " + quoted(id));
    }
    m.controllable_[it->second] = true;
  }
  return m;
}

std::vector<VariableId> topological_order(const WorldModel& model) {
  std::vector<VariableId> out;
  out.reserve(model.size());
  for (std::size_t v : model.topological_indices()) out.push_back(model.variables()[v]);
  return out;
}

std::vector<Literal> all_literals(const WorldModel& model) {
  std::vector<Literal> out;
  out.reserve(2 * model.size());
  for (const VariableId& id : model.variables()) {
    out.push_back(Literal{id, true});
    out.push_back(Literal{id, false});
  }
  return out;
}

double joint_probability(const WorldModel& model, const Assignment& assignment) {
  std::vector<char> state(model.size(), 0);
  std::vector<bool> covered(model.size(), false);
  for (const auto& [id, value] : assignment) {
    const auto v = model.find(id);
    if (!v) {
      throw IncompleteAssignmentError("assignment names unknown variable '" + id.str() + "'");
    }
    state[*v] = value ? 1 : 0;
    covered[*v] = true;
  }
  for (std::size_t v = 0; v < model.size(); ++v) {
    if (!covered[v]) {
      throw IncompleteAssignmentError("assignment does not cover variable '" +
                                      model.variables()[v].str() + "'");
    }
  }
  double p = 1.0;
  for (std::size_t v = 0; v < model.size(); ++v) {
    const double pt = model.p_true(v, parent_config(model, v, state));
    p *= state[v] ? pt : 1.0 - pt;
  }
  return p;
}

double joint_probability(const WorldModel& model, std::uint64_t bits) {
  if (model.size() > 64) {
    throw ModelTooLargeError("bit-packed assignments support at most 64 variables");
  }
  std::vector<char> state(model.size());
  for (std::size_t v = 0; v < model.size(); ++v) state[v] = ((bits >> v) & 1u) != 0;
  double p = 1.0;
  for (std::size_t v = 0; v < model.size(); ++v) {
    const double pt = model.p_true(v, parent_config(model, v, state));
    p *= state[v] ? pt : 1.0 - pt;
  }
  return p;
}

WorldModel do_surgery(const WorldModel& model, const Literal& intervention) {
  const std::size_t target = model.index_of(intervention.variable);
  WorldModel out = model;
  out.parents_[target].clear();
  out.cpts_[target].assign(1, intervention.polarity ? 1.0 : 0.0);
  out.link();
  return out;
}

double interventional_prob(const WorldModel& model, const Literal& target,
                           const Literal& intervention) {
  const std::size_t t = model.index_of(target.variable);
  const std::size_t o = model.index_of(intervention.variable);
  if (t == o) {
    throw SameVariableError("target and intervention both refer to '" +
                            target.variable.str() + "'");
  }
  if (model.size() > model.enumeration_cap()) {
    throw ModelTooLargeError("model has " + std::to_string(model.size()) +
                             " variables; the enumeration cap is " +
                             std::to_string(model.enumeration_cap()));
  }

  // Ancestors of the target once the intervened variable's incoming edges
  // are cut. Nothing outside this set can change the target's marginal.
  const std::size_t n = model.size();
  std::vector<bool> relevant(n, false);
  std::vector<std::size_t> stack{t};
  relevant[t] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v == o) continue;
    for (std::size_t p : model.parents(v)) {
      if (!relevant[p]) {
        relevant[p] = true;
        stack.push_back(p);
      }
    }
  }

  // Free variables in topological order; the intervened one is clamped.
  std::vector<std::size_t> free;
  for (std::size_t v : model.topological_indices()) {
    if (relevant[v] && v != o) free.push_back(v);
  }

  std::vector<char> state(n, 0);
  state[o] = intervention.polarity ? 1 : 0;
  const std::uint64_t configs = std::uint64_t{1} << free.size();
  double hit = 0.0;
  for (std::uint64_t c = 0; c < configs; ++c) {
    double p = 1.0;
    for (std::size_t i = 0; i < free.size() && p != 0.0; ++i) {
      const std::size_t v = free[i];
      state[v] = ((c >> i) & 1u) != 0;
      const double pt = model.p_true(v, parent_config(model, v, state));
      p *= state[v] ? pt : 1.0 - pt;
    }
    if (p != 0.0 && (state[t] != 0) == target.polarity) hit += p;
  }
  return std::clamp(hit, 0.0, 1.0);
}

}  // namespace valgraph
