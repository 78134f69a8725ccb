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

#include "cli.hpp"

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "valgraph/valgraph.hpp"

namespace valgraph::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads FILE arguments; `-` is standard input, read once and shared by every
// argument that names it.
class Inputs {
 public:
  explicit Inputs(std::istream& in) : in_(in) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      if (!stdin_) stdin_.emplace(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
      return *stdin_;
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("file not found or unreadable: " + path);
    return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }

 private:
  std::istream& in_;
  std::optional<std::string> stdin_;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << content) || !file.flush()) throw IoError("cannot write " + path);
}

std::size_t enumeration_cap() {
  const char* env = std::getenv("VALGRAPH_MAX_VARS");
  if (env == nullptr || *env == '\0') return WorldModel::kDefaultEnumerationCap;
  char* end = nullptr;
  errno = 0;
  const unsigned long long cap = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || cap == 0 || cap > 62) {
    throw UsageError(std::string("VALGRAPH_MAX_VARS must be an integer in 1..62, got '") + env +
                     "'");
  }
  return static_cast<std::size_t>(cap);
}

Literal literal_flag(const std::string& text, const std::string& flag) {
  try {
    return Literal::parse(text);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

GridAxis grid_flag(const std::string& text) {
  std::istringstream in(text);
  GridAxis axis;
  char c1 = 0, c2 = 0;
  if (!(in >> axis.lo >> c1 >> axis.hi >> c2 >> axis.step) || c1 != ':' || c2 != ':' ||
      in.peek() != std::char_traits<char>::eof()) {
    throw UsageError("--grid must look like LO:HI:STEP, got '" + text + "'");
  }
  return axis;
}

struct McmcFlags {
  std::size_t samples = McmcConfig{}.samples;
  std::size_t burn = McmcConfig{}.burn_in;
  double step = McmcConfig{}.step_size;
  std::uint64_t seed = 1;

  void add(CLI::App* cmd, const std::string& count_flag) {
    cmd->add_option(count_flag, samples, "Total Metropolis-Hastings iterations")
        ->capture_default_str();
    cmd->add_option("--burn", burn, "Iterations discarded as burn-in")->capture_default_str();
    cmd->add_option("--step", step, "Random-walk proposal scale")->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  }
  McmcConfig config() const { return McmcConfig{samples, burn, step}; }
};

struct Context {
  Inputs inputs;
  std::size_t cap;

  ModelBundle model(const std::string& path) { return parse_model(inputs.read(path), cap); }
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"valgraph: instrumental value propagation and inverse value inference"};
  app.require_subcommand(1);

  std::string model_path, obs_path, out_path, literal_text, target_text, of_text, on_text;
  std::string grid_text = "-20:20:0.05", samples_path, out_dir, scenario_name;
  bool use_oracle = false;
  std::size_t choices = 1;
  std::uint64_t scenario_seed = 0;
  McmcFlags mcmc;
  std::function<std::string(Context&)> action;

  const auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", model_path, "Model file (- for stdin)")->required();
  };
  const auto add_obs = [&](CLI::App* cmd) {
    cmd->add_option("--obs", obs_path, "Observation file (- for stdin)")->required();
  };

  auto* eval = app.add_subcommand("eval", "Total value of every literal (or one)");
  add_model(eval);
  eval->add_option("--literal", literal_text, "Only this literal, e.g. Flu=true");
  eval->callback([&] {
    action = [&](Context& ctx) {
      std::optional<Literal> only;
      if (!literal_text.empty()) only = literal_flag(literal_text, "--literal");
      const ModelBundle b = ctx.model(model_path);
      if (only) b.model.index_of(only->variable);
      return values_csv(evaluate_values(b.model, b.rewards), b.rewards, only);
    };
  });

  auto* imp = app.add_subcommand("impact", "Impact of a literal on one child variable");
  add_model(imp);
  imp->add_option("--of", of_text, "Literal, e.g. Vaccinated=true")->required();
  imp->add_option("--on", on_text, "Child variable name")->required();
  imp->callback([&] {
    action = [&](Context& ctx) {
      const Literal of = literal_flag(of_text, "--of");
      VariableId on;
      try {
        on = VariableId(on_text);
      } catch (const InvalidValueError& e) {
        throw UsageError(std::string("--on: ") + e.what());
      }
      const ModelBundle b = ctx.model(model_path);
      const ValueTable values = evaluate_values(b.model, b.rewards);
      return format_number(impact(b.model, values, of, on)) + "\n";
    };
  });

  auto* explain = app.add_subcommand("explain", "Intrinsic and per-child breakdown of a value");
  add_model(explain);
  explain->add_option("--literal", literal_text, "Literal to explain")->required();
  explain->callback([&] {
    action = [&](Context& ctx) {
      const Literal l = literal_flag(literal_text, "--literal");
      const ModelBundle b = ctx.model(model_path);
      return explanation_csv(explain_value(b.model, b.rewards, l));
    };
  });

  auto* infer = app.add_subcommand("infer", "Sample the posterior over free intrinsic rewards");
  add_model(infer);
  add_obs(infer);
  mcmc.add(infer, "--samples");
  infer->add_option("--out", out_path, "Samples CSV destination")->required();
  infer->callback([&] {
    action = [&](Context& ctx) {
      const ModelBundle b = ctx.model(model_path);
      const InferenceProblem p =
          make_inference_problem(b, parse_observations(ctx.inputs.read(obs_path), b.model));
      const PosteriorSamples s = mh_sample(p, mcmc.config(), mcmc.seed);
      write_file(out_path, samples_csv(s));
      return samples_summary(s);
    };
  });

  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Exact grid posterior over free intrinsic rewards");
  add_model(oracle);
  add_obs(oracle);
  oracle->add_option("--grid", grid_text, "LO:HI:STEP, shared by every free literal")
      ->capture_default_str();
  oracle->add_option("--out", oracle_out, "Write the grid CSV here instead of stdout");
  oracle->callback([&] {
    action = [&](Context& ctx) -> std::string {
      const GridAxis axis = grid_flag(grid_text);
      const ModelBundle b = ctx.model(model_path);
      const InferenceProblem p =
          make_inference_problem(b, parse_observations(ctx.inputs.read(obs_path), b.model));
      const GridPosterior g = grid_posterior(p, std::span<const GridAxis>(&axis, 1));
      if (!oracle_out.empty()) {
        write_file(oracle_out, grid_csv(g));
        return grid_summary(g);
      }
      err << grid_summary(g);
      return grid_csv(g);
    };
  });

  auto* predict = app.add_subcommand("predict", "Posterior predictive value of a literal");
  add_model(predict);
  add_obs(predict);
  predict->add_option("--target", target_text, "Literal to predict")->required();
  auto* oracle_flag = predict->add_flag("--oracle", use_oracle, "Use the grid posterior");
  predict->add_option("--grid", grid_text, "Grid for --oracle")->capture_default_str();
  predict->add_option("--samples", samples_path, "Posterior samples CSV from `infer`")
      ->excludes(oracle_flag);
  mcmc.add(predict, "--iterations");
  predict->callback([&] {
    action = [&](Context& ctx) {
      const Literal target = literal_flag(target_text, "--target");
      const GridAxis axis = grid_flag(grid_text);
      const ModelBundle b = ctx.model(model_path);
      const InferenceProblem p =
          make_inference_problem(b, parse_observations(ctx.inputs.read(obs_path), b.model));
      if (use_oracle) {
        return summary_csv(
            predict_value(p, grid_posterior(p, std::span<const GridAxis>(&axis, 1)), target));
      }
      if (!samples_path.empty()) {
        const PosteriorSamples s = parse_samples_csv(ctx.inputs.read(samples_path));
        if (s.parameters != p.free()) {
          throw ProblemError("samples columns do not match the free literals");
        }
        return summary_csv(predict_value(p, s, target));
      }
      return summary_csv(predict_value(p, mh_sample(p, mcmc.config(), mcmc.seed), target));
    };
  });

  auto* baseline = app.add_subcommand(
      "baseline", "Flat-utility learner: samples like `infer`, or a prediction with --target");
  add_model(baseline);
  add_obs(baseline);
  mcmc.add(baseline, "--samples");
  baseline->add_option("--out", out_path, "Samples CSV destination (sampling mode)");
  baseline->add_option("--target", target_text, "Literal to predict (prediction mode)");
  baseline->add_flag("--oracle", use_oracle, "Use the grid posterior in prediction mode");
  baseline->add_option("--grid", grid_text, "Grid for --oracle")->capture_default_str();
  baseline->callback([&] {
    if (target_text.empty() && out_path.empty()) {
      throw CLI::ValidationError("baseline", "needs --out (sampling) or --target (prediction)");
    }
    action = [&](Context& ctx) {
      const ModelBundle b = ctx.model(model_path);
      const FlatProblem p =
          make_flat_problem(b, parse_observations(ctx.inputs.read(obs_path), b.model));
      if (!target_text.empty()) {
        const Literal target = literal_flag(target_text, "--target");
        const GridAxis axis = grid_flag(grid_text);
        if (use_oracle) {
          return summary_csv(baseline_predict(
              p, baseline_grid_posterior(p, std::span<const GridAxis>(&axis, 1)), target));
        }
        return summary_csv(
            baseline_predict(p, baseline_posterior(p, mcmc.config(), mcmc.seed), target));
      }
      const PosteriorSamples s = baseline_posterior(p, mcmc.config(), mcmc.seed);
      write_file(out_path, samples_csv(s));
      return samples_summary(s);
    };
  });

  auto* compare = app.add_subcommand("compare", "Generalization gap between both learners");
  add_model(compare);
  add_obs(compare);
  compare->add_option("--target", target_text, "Literal to predict")->required();
  compare->add_flag("--oracle", use_oracle, "Use grid posteriors instead of sampling");
  compare->add_option("--grid", grid_text, "Grid for --oracle")->capture_default_str();
  mcmc.add(compare, "--iterations");
  compare->callback([&] {
    action = [&](Context& ctx) {
      const Literal target = literal_flag(target_text, "--target");
      const GridAxis axis = grid_flag(grid_text);
      const ModelBundle b = ctx.model(model_path);
      const ObservationSet obs = parse_observations(ctx.inputs.read(obs_path), b.model);
      const InferenceProblem gp = make_inference_problem(b, obs);
      const FlatProblem fp = make_flat_problem(b, obs);
      if (use_oracle) {
        return gap_csv(generalization_gap(gp, fp, target, std::span<const GridAxis>(&axis, 1)));
      }
      return gap_csv(generalization_gap(gp, fp, target, mcmc.config(), mcmc.seed));
    };
  });

  auto* scenario = app.add_subcommand("scenario", "Built-in scenarios");
  scenario->require_subcommand(1);
  auto* emit = scenario->add_subcommand("emit", "Write a built-in scenario");
  emit->add_option("name", scenario_name, "miriam, immune, chain, generalize, random-k")
      ->required();
  emit->add_option("--out-dir", out_dir,
                   "Write NAME.model.json and NAME.obs.json here instead of stdout");
  emit->add_option("--seed", scenario_seed, "Seed for random-k")->capture_default_str();
  emit->add_option("--choices", choices, "Vaccination choices in generalize")
      ->capture_default_str();
  emit->callback([&] {
    action = [&](Context&) -> std::string {
      const Scenario s = builtin_scenario(scenario_name, ScenarioOptions{scenario_seed, choices});
      if (out_dir.empty()) return emit_scenario(s);
      const std::filesystem::path dir(out_dir);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
      const std::string model_file = (dir / (scenario_name + ".model.json")).string();
      const std::string obs_file = (dir / (scenario_name + ".obs.json")).string();
      write_file(model_file, emit_model(s.bundle.model, s.bundle.rewards));
      write_file(obs_file, emit_observations(s.observations));
      return model_file + "\n" + obs_file + "\n";
    };
  });

  std::vector<const char*> argv{"valgraph"};
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    Context ctx{Inputs(in), enumeration_cap()};
    const std::string output = action(ctx);
    out << output;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "Error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace valgraph::cli
