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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "valgraph/valgraph.hpp"

namespace valgraph {
namespace {

namespace fs = std::filesystem;
using testing::lit;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("valgraph_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Writes NAME.model.json and NAME.obs.json; returns their paths.
  std::pair<std::string, std::string> emit(const std::string& name, std::size_t choices = 1) {
    const Result r = run({"scenario", "emit", name, "--out-dir", dir_.string(), "--choices",
                          std::to_string(choices)});
    EXPECT_EQ(r.code, 0) << r.err;
    return {(dir_ / (name + ".model.json")).string(), (dir_ / (name + ".obs.json")).string()};
  }

  std::string path(const std::string& file) const { return (dir_ / file).string(); }

  fs::path dir_;
};

TEST_F(CliTest, EvalMatchesLibrary) {
  const auto [model, obs] = emit("miriam");
  const Scenario s = builtin_scenario("miriam");
  const Result r = run({"eval", "--model", model});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, values_csv(evaluate_values(s.bundle.model, s.bundle.rewards), s.bundle.rewards));
  EXPECT_EQ(r.out,
            "literal,intrinsic,value\n"
            "Vaccinated=true,0,4\n"
            "Vaccinated=false,0,-4\n"
            "Flu=true,-10,-10\n"
            "Flu=false,0,0\n");
  EXPECT_EQ(run({"eval", "--model", model, "--literal", "Vaccinated=true"}).out,
            "literal,intrinsic,value\nVaccinated=true,0,4\n");
}

TEST_F(CliTest, EvalFromPipedScenario) {
  const Result emitted = run({"scenario", "emit", "miriam"});
  ASSERT_EQ(emitted.code, 0);
  const Result r = run({"eval", "--model", "-", "--literal", "Vaccinated=true"}, emitted.out);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Vaccinated=true,0,4\n"), std::string::npos);
}

TEST_F(CliTest, ImpactAndExplain) {
  const auto [model, obs] = emit("miriam");
  EXPECT_EQ(run({"impact", "--model", model, "--of", "Vaccinated=true", "--on", "Flu"}).out, "4\n");
  const Scenario s = builtin_scenario("miriam");
  const Result r = run({"explain", "--model", model, "--literal", "Vaccinated=true"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, explanation_csv(explain_value(s.bundle.model, s.bundle.rewards, lit("Vaccinated=true"))));
  EXPECT_EQ(r.out, "term,amount\nintrinsic,0\nFlu,4\ntotal,4\n");
  EXPECT_EQ(run({"impact", "--model", model, "--of", "Flu=true", "--on", "Vaccinated"}).code, 1);
}

TEST_F(CliTest, InferIsDeterministicAndMatchesLibrary) {
  const auto [model, obs] = emit("generalize", 5);
  const Result a = run({"infer", "--model", model, "--obs", obs, "--seed", "9", "--out", path("a.csv")});
  const Result b = run({"infer", "--model", model, "--obs", obs, "--seed", "9", "--out", path("b.csv")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(a.out, b.out);

  const Scenario s = builtin_scenario("generalize", ScenarioOptions{0, 5});
  const PosteriorSamples lib = mh_sample(make_inference_problem(s.bundle, s.observations), McmcConfig{}, 9);
  EXPECT_EQ(slurp(path("a.csv")), samples_csv(lib));
  EXPECT_EQ(a.out, samples_summary(lib));
  EXPECT_EQ(a.out.rfind("mean=", 0), 0u);

  run({"infer", "--model", model, "--obs", obs, "--seed", "10", "--out", path("c.csv")});
  EXPECT_NE(slurp(path("a.csv")), slurp(path("c.csv")));
}

TEST_F(CliTest, OracleMatchesLibrary) {
  const auto [model, obs] = emit("generalize", 2);
  const Scenario s = builtin_scenario("generalize", ScenarioOptions{0, 2});
  const InferenceProblem p = make_inference_problem(s.bundle, s.observations);
  const GridAxis axis{-5.0, 5.0, 0.5};
  const GridPosterior g = grid_posterior(p, std::span(&axis, 1));

  const Result r = run({"oracle", "--model", model, "--obs", obs, "--grid", "-5:5:0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, grid_csv(g));
  EXPECT_EQ(r.err, grid_summary(g));
  EXPECT_EQ(r.out.rfind("r,mass\n", 0), 0u);

  const Result to_file =
      run({"oracle", "--model", model, "--obs", obs, "--grid", "-5:5:0.5", "--out", path("g.csv")});
  EXPECT_EQ(slurp(path("g.csv")), grid_csv(g));
  EXPECT_EQ(to_file.out, grid_summary(g));
}

TEST_F(CliTest, PredictModes) {
  const auto [model, obs] = emit("generalize", 1);
  const Scenario s = builtin_scenario("generalize");
  const InferenceProblem p = make_inference_problem(s.bundle, s.observations);
  const GridAxis axis{};

  const Result oracle = run({"predict", "--model", model, "--obs", obs, "--target", "HandWash=true", "--oracle"});
  ASSERT_EQ(oracle.code, 0) << oracle.err;
  EXPECT_EQ(oracle.out, summary_csv(predict_value(p, grid_posterior(p, std::span(&axis, 1)),
                                                  lit("HandWash=true"))));
  EXPECT_EQ(oracle.out.rfind("target,mean,sd,q05,q50,q95,prob_positive\nHandWash=true,", 0), 0u);

  ASSERT_EQ(run({"infer", "--model", model, "--obs", obs, "--out", path("s.csv")}).code, 0);
  const Result from_samples =
      run({"predict", "--model", model, "--obs", obs, "--target", "HandWash=true", "--samples", path("s.csv")});
  ASSERT_EQ(from_samples.code, 0) << from_samples.err;
  const Result inline_run = run({"predict", "--model", model, "--obs", obs, "--target", "HandWash=true"});
  EXPECT_EQ(inline_run.out,
            summary_csv(predict_value(p, mh_sample(p, McmcConfig{}, 1), lit("HandWash=true"))));
  EXPECT_EQ(from_samples.out,
            summary_csv(predict_value(p, parse_samples_csv(slurp(path("s.csv"))), lit("HandWash=true"))));
}

TEST_F(CliTest, BaselineAndCompare) {
  const auto [model, obs] = emit("generalize", 1);
  const Scenario s = builtin_scenario("generalize");
  const FlatProblem f = make_flat_problem(s.bundle, s.observations);
  const InferenceProblem p = make_inference_problem(s.bundle, s.observations);
  const GridAxis axis{};

  const Result pred =
      run({"baseline", "--model", model, "--obs", obs, "--target", "HandWash=true", "--oracle"});
  ASSERT_EQ(pred.code, 0) << pred.err;
  EXPECT_EQ(pred.out, summary_csv(baseline_predict(f, baseline_grid_posterior(f, std::span(&axis, 1)),
                                                   lit("HandWash=true"))));

  const Result sampled = run({"baseline", "--model", model, "--obs", obs, "--out", path("b.csv")});
  ASSERT_EQ(sampled.code, 0) << sampled.err;
  EXPECT_EQ(slurp(path("b.csv")), samples_csv(baseline_posterior(f, McmcConfig{}, 1)));
  EXPECT_EQ(run({"baseline", "--model", model, "--obs", obs}).code, 2);

  const Result cmp = run({"compare", "--model", model, "--obs", obs, "--target", "HandWash=true", "--oracle"});
  ASSERT_EQ(cmp.code, 0) << cmp.err;
  EXPECT_EQ(cmp.out, gap_csv(generalization_gap(p, f, lit("HandWash=true"), std::span(&axis, 1))));
  EXPECT_NE(cmp.out.find("\nbaseline_prior_divergence,0\n"), std::string::npos) << cmp.out;
  EXPECT_NE(cmp.out.find("\nbaseline_prob_positive,0.5\n"), std::string::npos) << cmp.out;
}

TEST_F(CliTest, ExitCodes) {
  const auto [model, obs] = emit("miriam");
  const Result missing = run({"eval", "--model", path("nope.json")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("IoError"), std::string::npos) << missing.err;
  EXPECT_TRUE(missing.out.empty());

  EXPECT_EQ(run({"eval"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "--model", model, "--literal", "Flu"}).code, 2);
  EXPECT_EQ(run({"oracle", "--model", model, "--obs", obs, "--grid", "1:2"}).code, 2);
  EXPECT_EQ(run({"eval", "--model", model, "--literal", "Nope=true"}).code, 1);
  EXPECT_EQ(run({"scenario", "emit", "nope"}).code, 1);
  EXPECT_EQ(run({"infer", "--model", model, "--obs", obs, "--samples", "10", "--out", path("x.csv")}).code, 1);
  EXPECT_EQ(run({"eval", "--model", "-"}, "{ not json").code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, EnumerationCapFromEnvironment) {
  const Result emitted = run({"scenario", "emit", "random-8", "--seed", "3"});
  ASSERT_EQ(emitted.code, 0);
  ::setenv("VALGRAPH_MAX_VARS", "4", 1);
  const Result small = run({"eval", "--model", "-"}, emitted.out);
  ::setenv("VALGRAPH_MAX_VARS", "zero", 1);
  const Result bad = run({"eval", "--model", "-"}, emitted.out);
  ::unsetenv("VALGRAPH_MAX_VARS");
  const Result fine = run({"eval", "--model", "-"}, emitted.out);
  EXPECT_EQ(fine.code, 0) << fine.err;
  EXPECT_EQ(bad.code, 2);
  const Scenario s = builtin_scenario("random-8", ScenarioOptions{3, 1});
  const bool has_edges = [&] {
    for (std::size_t v = 0; v < s.bundle.model.size(); ++v) {
      if (!s.bundle.model.children(v).empty()) return true;
    }
    return false;
  }();
  if (has_edges) {
    EXPECT_EQ(small.code, 1);
    EXPECT_NE(small.err.find("ModelTooLargeError"), std::string::npos) << small.err;
  }
}

}  // namespace
}  // namespace valgraph
