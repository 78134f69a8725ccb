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

#include "valgraph/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "valgraph/errors.hpp"

namespace valgraph {

namespace {

using json = nlohmann::json;

constexpr int kFormatVersion = 1;

const std::set<std::string> kModelKeys = {"format_version", "variables", "rewards", "controllable"};
const std::set<std::string> kObservationKeys = {"format_version", "observations", "inference"};

// ---------------------------------------------------------------- reading

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

void check_header(const json& doc, const std::set<std::string>& own,
                  const std::set<std::string>& tolerated) {
  if (!doc.is_object()) schema_error("$", "top level must be an object");
  for (const auto& item : doc.items()) {
    if (own.count(item.key()) == 0 && tolerated.count(item.key()) == 0) {
      schema_error("$", "unknown key '" + item.key() + "'");
    }
  }
  const auto it = doc.find("format_version");
  if (it == doc.end()) schema_error("$", "missing format_version");
  if (!it->is_number_integer() || it->get<long long>() != kFormatVersion) {
    schema_error("$.format_version", "unsupported format version (expected 1)");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, "missing key '" + key + "'");
  return *it;
}

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  for (const auto& item : obj.items()) {
    if (allowed.count(item.key()) == 0) schema_error(path, "unknown key '" + item.key() + "'");
  }
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) schema_error(path, "expected a number");
  return value.get<double>();
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) schema_error(path, "expected a string");
  return value.get<std::string>();
}

bool as_bool(const json& value, const std::string& path) {
  if (!value.is_boolean()) schema_error(path, "expected true or false");
  return value.get<bool>();
}

const json& as_array(const json& value, const std::string& path) {
  if (!value.is_array()) schema_error(path, "expected an array");
  return value;
}

VariableId as_variable(const json& value, const std::string& path) {
  try {
    return VariableId(as_string(value, path));
  } catch (const InvalidValueError& e) {
    schema_error(path, e.what());
  }
}

Literal as_literal(const json& value, const std::string& path) {
  try {
    return Literal::parse(as_string(value, path));
  } catch (const ParseError& e) {
    schema_error(path, e.what());
  }
}

Literal resolved_literal(const json& value, const std::string& path, const WorldModel& model) {
  Literal l = as_literal(value, path);
  if (!model.find(l.variable)) {
    throw ObservationError(path + ": literal " + l.to_string() +
                           " does not name a model variable");
  }
  return l;
}

double optional_number(const json& obj, const std::string& key, double fallback,
                       const std::string& path) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, path + "." + key);
}

// ---------------------------------------------------------------- writing

double canonical_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double rounded = std::strtod(buf, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

json model_json(const WorldModel& model, const RewardTable& rewards) {
  json doc = json::object();
  doc["format_version"] = kFormatVersion;

  json controllable = json::array();
  for (const VariableId& id : model.controllable()) controllable.push_back(id.str());
  doc["controllable"] = std::move(controllable);

  json reward_obj = json::object();
  for (const auto& [literal, value] : rewards.entries()) {
    reward_obj[literal.to_string()] = canonical_number(value);
  }
  doc["rewards"] = std::move(reward_obj);

  json variables = json::array();
  for (std::size_t v = 0; v < model.size(); ++v) {
    json var = json::object();
    var["name"] = model.variables()[v].str();
    json parents = json::array();
    for (std::size_t p : model.parents(v)) parents.push_back(model.variables()[p].str());
    var["parents"] = std::move(parents);
    json cpt = json::array();
    for (const CptRow& row : model.cpt_rows(v)) {
      json given = json::object();
      for (const auto& [id, polarity] : row.given) given[id.str()] = polarity;
      cpt.push_back(json{{"given", std::move(given)}, {"p_true", canonical_number(row.p_true)}});
    }
    var["cpt"] = std::move(cpt);
    variables.push_back(std::move(var));
  }
  doc["variables"] = std::move(variables);
  return doc;
}

json observations_json(const ObservationSet& set) {
  json doc = json::object();
  doc["format_version"] = kFormatVersion;

  json records = json::array();
  for (const Observation& o : set.observations) {
    if (const auto* report = std::get_if<ValueReport>(&o)) {
      records.push_back(json{{"type", "value_report"},
                             {"literal", report->literal.to_string()},
                             {"reported", canonical_number(report->reported)},
                             {"sigma", canonical_number(report->sigma)}});
    } else {
      const auto& choice = std::get<ChoiceObservation>(o);
      json options = json::array();
      for (const Literal& l : choice.options) options.push_back(l.to_string());
      records.push_back(json{{"type", "choice"},
                             {"options", std::move(options)},
                             {"chosen", choice.chosen.to_string()},
                             {"beta", canonical_number(choice.beta)}});
    }
  }
  doc["observations"] = std::move(records);

  const InferenceSettings& s = set.inference;
  json free = json::array();
  for (const Literal& l : s.free) free.push_back(l.to_string());
  json fixed = json::object();
  for (const auto& [l, u] : s.baseline_fixed) fixed[l.to_string()] = canonical_number(u);
  doc["inference"] = json{{"free", std::move(free)},
                          {"prior_mean", canonical_number(s.prior_mean)},
                          {"prior_sd", canonical_number(s.prior_sd)},
                          {"beta", canonical_number(s.beta)},
                          {"sigma", canonical_number(s.sigma)},
                          {"baseline_fixed", std::move(fixed)}};
  return doc;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------- scenarios

VariableSpec root(const std::string& name, double p) {
  return VariableSpec{VariableId(name), {}, {CptRow{{}, p}}};
}

VariableSpec single_parent(const std::string& name, const std::string& parent, double p_if_true,
                           double p_if_false) {
  const VariableId pid(parent);
  return VariableSpec{VariableId(name),
                      {pid},
                      {CptRow{{{pid, true}}, p_if_true}, CptRow{{{pid, false}}, p_if_false}}};
}

ChoiceObservation binary_choice(const std::string& variable, bool chosen) {
  const VariableId id(variable);
  return ChoiceObservation{{Literal{id, true}, Literal{id, false}}, Literal{id, chosen}, 1.0};
}

ObservationSet one_free(const std::string& free, std::vector<Observation> obs,
                        const std::string& anchor) {
  ObservationSet set;
  set.observations = std::move(obs);
  set.inference.free = {Literal::parse(free)};
  set.inference.baseline_fixed[Literal::parse(anchor)] = 0.0;
  return set;
}

Scenario miriam_like(const std::string& name, double p_flu_vaccinated, double p_flu_unvaccinated) {
  ModelSpec spec;
  spec.variables = {root("Vaccinated", 0.5),
                    single_parent("Flu", "Vaccinated", p_flu_vaccinated, p_flu_unvaccinated)};
  spec.controllable = {VariableId("Vaccinated")};
  Scenario s;
  s.name = name;
  s.bundle.model = build_model(spec);
  s.bundle.rewards.set(Literal::parse("Flu=true"), -10.0);
  s.observations =
      one_free("Flu=true", {binary_choice("Vaccinated", true)}, "Vaccinated=false");
  return s;
}

Scenario chain() {
  ModelSpec spec;
  spec.variables = {root("A", 0.5), single_parent("B", "A", 0.9, 0.1),
                    single_parent("C", "B", 0.8, 0.2)};
  spec.controllable = {VariableId("A")};
  Scenario s;
  s.name = "chain";
  s.bundle.model = build_model(spec);
  s.bundle.rewards.set(Literal::parse("C=true"), 10.0);
  s.observations = one_free("C=true", {binary_choice("A", true)}, "A=false");
  return s;
}

Scenario generalize(std::size_t choices) {
  const VariableId v("Vaccinated"), hw("HandWash");
  ModelSpec spec;
  spec.variables = {root("Vaccinated", 0.5), root("HandWash", 0.5),
                    VariableSpec{VariableId("Flu"),
                                 {v, hw},
                                 {CptRow{{{v, true}, {hw, true}}, 0.05},
                                  CptRow{{{v, true}, {hw, false}}, 0.15},
                                  CptRow{{{v, false}, {hw, true}}, 0.35},
                                  CptRow{{{v, false}, {hw, false}}, 0.60}}}};
  spec.controllable = {v, hw};
  Scenario s;
  s.name = "generalize";
  s.bundle.model = build_model(spec);
  s.bundle.rewards.set(Literal::parse("Flu=true"), -10.0);
  std::vector<Observation> obs(choices, Observation{binary_choice("Vaccinated", true)});
  s.observations = one_free("Flu=true", std::move(obs), "Vaccinated=false");
  return s;
}

// Draws are taken straight from the 64-bit engine so that the generated
// models do not depend on the standard library's distribution algorithms.
Scenario random_model(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + k);
  const auto below = [&rng](std::uint64_t n) { return rng() % n; };

  ModelSpec spec;
  for (std::size_t i = 0; i < k; ++i) {
    VariableSpec var;
    var.name = VariableId("X" + std::to_string(i + 1));
    for (std::size_t j = 0; j < i; ++j) {
      if (var.parents.size() < 3 && below(100) < 45) var.parents.push_back(spec.variables[j].name);
    }
    const std::size_t m = var.parents.size();
    for (std::uint64_t config = 0; config < (std::uint64_t{1} << m); ++config) {
      CptRow row;
      for (std::size_t j = 0; j < m; ++j) row.given[var.parents[j]] = ((config >> j) & 1u) != 0;
      row.p_true = static_cast<double>(1 + below(99)) / 100.0;
      var.cpt.push_back(std::move(row));
    }
    if (var.parents.empty()) spec.controllable.push_back(var.name);
    spec.variables.push_back(std::move(var));
  }

  Scenario s;
  s.name = "random-" + std::to_string(k);
  s.bundle.model = build_model(spec);
  for (const Literal& l : all_literals(s.bundle.model)) {
    if (below(2) == 0) {
      s.bundle.rewards.set(l, static_cast<double>(static_cast<int>(below(201)) - 100) / 10.0);
    }
  }
  return s;
}

}  // namespace

ModelBundle parse_model(std::string_view text, std::size_t enumeration_cap) {
  const json doc = parse_document(text);
  check_header(doc, kModelKeys, kObservationKeys);

  ModelSpec spec;
  const json& variables = as_array(require(doc, "variables", "$"), "$.variables");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const std::string path = "$.variables[" + std::to_string(i) + "]";
    const json& var = variables[i];
    only_keys(var, {"name", "parents", "cpt"}, path);
    VariableSpec vs;
    vs.name = as_variable(require(var, "name", path), path + ".name");
    const json& parents = as_array(require(var, "parents", path), path + ".parents");
    for (std::size_t j = 0; j < parents.size(); ++j) {
      vs.parents.push_back(as_variable(parents[j], path + ".parents[" + std::to_string(j) + "]"));
    }
    const json& cpt = as_array(require(var, "cpt", path), path + ".cpt");
    for (std::size_t j = 0; j < cpt.size(); ++j) {
      const std::string row_path = path + ".cpt[" + std::to_string(j) + "]";
      only_keys(cpt[j], {"given", "p_true"}, row_path);
      CptRow row;
      const json& given = require(cpt[j], "given", row_path);
      if (!given.is_object()) schema_error(row_path + ".given", "expected an object");
      for (const auto& item : given.items()) {
        row.given[as_variable(json(item.key()), row_path + ".given")] =
            as_bool(item.value(), row_path + ".given." + item.key());
      }
      row.p_true = as_number(require(cpt[j], "p_true", row_path), row_path + ".p_true");
      vs.cpt.push_back(std::move(row));
    }
    spec.variables.push_back(std::move(vs));
  }

  if (const auto it = doc.find("controllable"); it != doc.end()) {
    const json& names = as_array(*it, "$.controllable");
    for (std::size_t i = 0; i < names.size(); ++i) {
      spec.controllable.push_back(
          as_variable(names[i], "$.controllable[" + std::to_string(i) + "]"));
    }
  }

  ModelBundle bundle{build_model(spec, enumeration_cap), {}};

  if (const auto it = doc.find("rewards"); it != doc.end()) {
    if (!it->is_object()) schema_error("$.rewards", "expected an object");
    for (const auto& item : it->items()) {
      const std::string path = "$.rewards." + item.key();
      const Literal l = as_literal(json(item.key()), path);
      bundle.model.index_of(l.variable);
      const double value = as_number(item.value(), path);
      if (!std::isfinite(value)) schema_error(path, "reward is not finite");
      bundle.rewards.set(l, value);
    }
  }
  return bundle;
}

std::string emit_model(const WorldModel& model, const RewardTable& rewards) {
  return dump(model_json(model, rewards));
}

ObservationSet parse_observations(std::string_view text, const WorldModel& model) {
  const json doc = parse_document(text);
  check_header(doc, kObservationKeys, kModelKeys);

  ObservationSet set;
  InferenceSettings& s = set.inference;
  if (const auto it = doc.find("inference"); it != doc.end()) {
    const std::string path = "$.inference";
    only_keys(*it, {"free", "prior_mean", "prior_sd", "beta", "sigma", "baseline_fixed"}, path);
    if (const auto f = it->find("free"); f != it->end()) {
      const json& free = as_array(*f, path + ".free");
      for (std::size_t i = 0; i < free.size(); ++i) {
        s.free.push_back(
            resolved_literal(free[i], path + ".free[" + std::to_string(i) + "]", model));
      }
    }
    s.prior_mean = optional_number(*it, "prior_mean", s.prior_mean, path);
    s.prior_sd = optional_number(*it, "prior_sd", s.prior_sd, path);
    s.beta = optional_number(*it, "beta", s.beta, path);
    s.sigma = optional_number(*it, "sigma", s.sigma, path);
    if (const auto b = it->find("baseline_fixed"); b != it->end()) {
      if (!b->is_object()) schema_error(path + ".baseline_fixed", "expected an object");
      for (const auto& item : b->items()) {
        const std::string item_path = path + ".baseline_fixed." + item.key();
        s.baseline_fixed[resolved_literal(json(item.key()), item_path, model)] =
            as_number(item.value(), item_path);
      }
    }
  }

  const json& records = as_array(require(doc, "observations", "$"), "$.observations");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string path = "$.observations[" + std::to_string(i) + "]";
    const json& rec = records[i];
    if (!rec.is_object()) schema_error(path, "expected an object");
    const std::string type = as_string(require(rec, "type", path), path + ".type");
    Observation obs;
    if (type == "value_report") {
      only_keys(rec, {"type", "literal", "reported", "sigma"}, path);
      obs = ValueReport{resolved_literal(require(rec, "literal", path), path + ".literal", model),
                        as_number(require(rec, "reported", path), path + ".reported"),
                        optional_number(rec, "sigma", s.sigma, path)};
    } else if (type == "choice") {
      only_keys(rec, {"type", "options", "chosen", "beta"}, path);
      ChoiceObservation choice;
      const json& options = as_array(require(rec, "options", path), path + ".options");
      for (std::size_t j = 0; j < options.size(); ++j) {
        choice.options.push_back(
            resolved_literal(options[j], path + ".options[" + std::to_string(j) + "]", model));
      }
      choice.chosen = resolved_literal(require(rec, "chosen", path), path + ".chosen", model);
      choice.beta = optional_number(rec, "beta", s.beta, path);
      obs = std::move(choice);
    } else {
      schema_error(path + ".type", "expected 'value_report' or 'choice', got '" + type + "'");
    }
    try {
      validate(obs, model);
    } catch (const ObservationError& e) {
      throw ObservationError(path + ": " + e.what());
    }
    set.observations.push_back(std::move(obs));
  }
  return set;
}

std::string emit_observations(const ObservationSet& observations) {
  return dump(observations_json(observations));
}

std::string emit_scenario(const Scenario& scenario) {
  json doc = model_json(scenario.bundle.model, scenario.bundle.rewards);
  doc.update(observations_json(scenario.observations));
  return dump(doc);
}

Scenario builtin_scenario(std::string_view name, const ScenarioOptions& options) {
  if (name == "miriam") return miriam_like("miriam", 0.1, 0.5);
  if (name == "immune") return miriam_like("immune", 0.0, 0.0);
  if (name == "chain") return chain();
  if (name == "generalize") return generalize(options.choices);
  if (name.starts_with("random-")) {
    const std::string digits(name.substr(7));
    if (!digits.empty() && digits.size() <= 2 &&
        std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const std::size_t k = std::stoul(digits);
      if (k >= 1 && k <= 8) return random_model(k, options.seed);
    }
  }
  throw UnknownScenarioError("unknown scenario '" + std::string(name) +
                             "' (expected miriam, immune, chain, generalize or random-k, k in "
                             "1..8)");
}

std::vector<std::string> builtin_scenario_names() {
  return {"miriam", "immune", "chain", "generalize", "random-k"};
}

InferenceProblem make_inference_problem(const ModelBundle& bundle, const ObservationSet& set) {
  RewardTable fixed = bundle.rewards;
  for (const Literal& l : set.inference.free) fixed.erase(l);
  const GaussianPrior prior{set.inference.prior_mean, set.inference.prior_sd};
  return InferenceProblem(bundle.model, std::move(fixed), set.inference.free,
                          std::vector<GaussianPrior>(set.inference.free.size(), prior),
                          set.observations);
}

FlatProblem make_flat_problem(const ModelBundle& bundle, const ObservationSet& set) {
  std::vector<Literal> free;
  for (const Observation& o : set.observations) {
    for (const Literal& l : mentioned_literals(o)) {
      if (set.inference.baseline_fixed.count(l) == 0 &&
          std::find(free.begin(), free.end(), l) == free.end()) {
        free.push_back(l);
      }
    }
  }
  const GaussianPrior prior{set.inference.prior_mean, set.inference.prior_sd};
  std::vector<GaussianPrior> priors(free.size(), prior);
  return FlatProblem(all_literals(bundle.model), std::move(free), set.inference.baseline_fixed,
                     std::move(priors), prior, set.observations);
}

}  // namespace valgraph
