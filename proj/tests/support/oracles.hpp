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

// Test-only reference implementations. They read CPT entries from a model
// but share no evaluation code with the library: probabilities come from
// enumerating every total assignment of the mutilated joint, and values from
// a memo-free recursion over the Impact display.

#ifndef VALGRAPH_TESTS_ORACLES_HPP_
#define VALGRAPH_TESTS_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "valgraph/value_engine.hpp"
#include "valgraph/world_model.hpp"

namespace valgraph::oracle {

/// CPT entry for variable `v` under the full assignment `bits` (bit i is
/// variable i).
inline double cpt_entry(const WorldModel& m, std::size_t v, std::uint64_t bits) {
  const auto parents = m.parents(v);
  std::uint64_t config = 0;
  for (std::size_t p : parents) config = config * 2 + ((bits >> p) & 1u);
  return m.cpt_table(v)[config];
}

/// P(target = tpol | do(iv = ipol)), summing the truncated factorization over
/// all 2^n assignments.
inline double mutilated_marginal(const WorldModel& m, std::size_t target, bool tpol, std::size_t iv,
                                 bool ipol) {
  const std::size_t n = m.size();
  double sum = 0.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    if ((((bits >> iv) & 1u) != 0) != ipol) continue;
    if ((((bits >> target) & 1u) != 0) != tpol) continue;
    double p = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == iv) continue;
      const double pt = cpt_entry(m, v, bits);
      p *= ((bits >> v) & 1u) ? pt : 1.0 - pt;
    }
    sum += p;
  }
  return sum;
}

/// V(v = pol) = r + sum over children x of
///   [V(x) P(x|do(o)) + V(~x) P(~x|do(o))] - [V(x) P(x|do(~o)) + V(~x) P(~x|do(~o))].
inline double value(const WorldModel& m, const RewardTable& r, std::size_t v, bool pol) {
  double total = r.get(Literal{m.variables()[v], pol});
  for (std::size_t x : m.children(v)) {
    const double vx = value(m, r, x, true);
    const double vnx = value(m, r, x, false);
    const double with = vx * mutilated_marginal(m, x, true, v, pol) +
                        vnx * mutilated_marginal(m, x, false, v, pol);
    const double without = vx * mutilated_marginal(m, x, true, v, !pol) +
                           vnx * mutilated_marginal(m, x, false, v, !pol);
    total += with - without;
  }
  return total;
}

inline std::set<std::size_t> ancestors(const WorldModel& m, std::size_t v,
                                       std::size_t cut = static_cast<std::size_t>(-1)) {
  std::set<std::size_t> out;
  std::vector<std::size_t> stack{v};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    if (u == cut) continue;
    for (std::size_t p : m.parents(u)) {
      if (out.insert(p).second) stack.push_back(p);
    }
  }
  return out;
}

inline std::set<std::size_t> descendants(const WorldModel& m, std::size_t v) {
  std::set<std::size_t> out;
  std::vector<std::size_t> stack{v};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t c : m.children(u)) {
      if (out.insert(c).second) stack.push_back(c);
    }
  }
  return out;
}

/// Variables whose CPT can influence P(target | do(iv)): the target and its
/// ancestors once iv's incoming edges are cut, minus iv itself.
inline std::set<std::size_t> interventional_support(const WorldModel& m, std::size_t target,
                                                    std::size_t iv) {
  std::set<std::size_t> out = ancestors(m, target, iv);
  out.insert(target);
  out.erase(iv);
  return out;
}

/// Variables among {v} and its ancestors whose CPTs V(v = .) cannot depend
/// on: every interventional query the recursion makes (for v and each
/// descendant d, each child c of d) has support disjoint from them.
inline std::set<std::size_t> cut_ancestors(const WorldModel& m, std::size_t v) {
  std::set<std::size_t> candidates = ancestors(m, v);
  candidates.insert(v);
  std::set<std::size_t> sources = descendants(m, v);
  sources.insert(v);
  for (std::size_t d : sources) {
    for (std::size_t c : m.children(d)) {
      for (std::size_t s : interventional_support(m, c, d)) candidates.erase(s);
    }
  }
  return candidates;
}

/// True when the model's skeleton has no undirected cycle.
inline bool is_polyforest(const WorldModel& m) {
  std::vector<std::size_t> root(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) root[i] = i;
  const auto find = [&root](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t v = 0; v < m.size(); ++v) {
    for (std::size_t p : m.parents(v)) {
      const std::size_t a = find(v), b = find(p);
      if (a == b) return false;
      root[a] = b;
    }
  }
  return true;
}

}  // namespace valgraph::oracle

#endif  // VALGRAPH_TESTS_ORACLES_HPP_
