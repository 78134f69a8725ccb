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

#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "valgraph/valgraph.hpp"

namespace valgraph {
namespace {

using testing::lit;

const GridAxis kAxis{};

TEST(FlatProblemTest, GeneralizeShape) {
  const FlatProblem f = testing::generalize_flat(1);
  EXPECT_EQ(f.literals().size(), 6u);
  ASSERT_EQ(f.free().size(), 1u);
  EXPECT_EQ(f.free()[0], lit("Vaccinated=true"));
  EXPECT_EQ(f.fixed().at(lit("Vaccinated=false")), 0.0);
  EXPECT_TRUE(f.observed(lit("Vaccinated=true")));
  EXPECT_FALSE(f.observed(lit("HandWash=true")));
  const double u[] = {2.0};
  EXPECT_EQ(f.utility(lit("Vaccinated=true"), u), 2.0);
  EXPECT_EQ(f.utility(lit("Vaccinated=false"), u), 0.0);
  EXPECT_THROW(f.utility(lit("HandWash=true"), u), ProblemError);
}

TEST(FlatProblemTest, Validation) {
  const std::vector<Literal> in_play{lit("A=true"), lit("A=false")};
  EXPECT_THROW(FlatProblem(in_play, {lit("B=true")}, {}, {GaussianPrior{}}, {}, {}), ProblemError);
  EXPECT_THROW(FlatProblem(in_play, {lit("A=true")}, {{lit("A=true"), 0.0}}, {GaussianPrior{}}, {}, {}),
               ProblemError);
  EXPECT_THROW(FlatProblem(in_play, {lit("A=true")}, {}, {}, {}, {}), ProblemError);
  EXPECT_THROW(FlatProblem(in_play, {lit("A=true")}, {}, {GaussianPrior{}}, {},
                           {ChoiceObservation{{lit("A=true"), lit("A=false")}, lit("A=true")}}),
               ObservationError);
}

TEST(BaselineTest, ChoiceFavoursChosenOption) {
  const FlatProblem f = testing::generalize_flat(1);
  const double u[] = {0.0};
  EXPECT_NEAR(baseline_log_likelihood(f, u), std::log(0.5), 1e-12);
  const GridPosterior g = baseline_grid_posterior(f, std::span(&kAxis, 1));
  const PredictiveSummary v = baseline_predict(f, g, lit("Vaccinated=true"));
  EXPECT_GT(v.prob_positive, 0.5);
  EXPECT_GT(v.mean, 0.0);
  const PredictiveSummary s =
      baseline_predict(f, baseline_posterior(f, McmcConfig{}, 1), lit("Vaccinated=true"));
  EXPECT_GT(s.prob_positive, 0.5);
  EXPECT_NEAR(s.mean, v.mean, 0.2);
}

TEST(BaselineTest, UnobservedTargetsKeepThePriorExactly) {
  for (std::size_t k : {1u, 5u, 10u}) {
    const FlatProblem f = testing::generalize_flat(k);
    const GridPosterior g = baseline_grid_posterior(f, std::span(&kAxis, 1));
    for (const char* target : {"HandWash=true", "HandWash=false", "Flu=true"}) {
      const PredictiveSummary post = baseline_predict(f, g, lit(target));
      const PredictiveSummary prior = baseline_prior_predictive(f, lit(target));
      EXPECT_NEAR(post.mean, prior.mean, 1e-12);
      EXPECT_NEAR(post.sd, prior.sd, 1e-12);
      EXPECT_NEAR(post.prob_positive, prior.prob_positive, 1e-12);
      EXPECT_NEAR(prior_divergence(post, prior), 0.0, 1e-12);
    }
  }
}

TEST(BaselineTest, FixedTargetsAreDegenerate) {
  const FlatProblem f = testing::generalize_flat(1);
  const PredictiveSummary s = baseline_prior_predictive(f, lit("Vaccinated=false"));
  EXPECT_EQ(s.mean, 0.0);
  EXPECT_EQ(s.sd, 0.0);
}

TEST(PriorDivergenceTest, Formula) {
  PredictiveSummary prior{lit("A=true"), 0.0, 2.0};
  PredictiveSummary post{lit("A=true"), 1.0, 1.0};
  EXPECT_NEAR(prior_divergence(post, prior), 0.5, 1e-15);
  prior.sd = 0.0;
  EXPECT_EQ(prior_divergence(post, prior), 0.0);
}

TEST(GeneralizationGapTest, ChoicesOnly) {
  const GapReport grid = generalization_gap(testing::generalize_problem(1), testing::generalize_flat(1),
                                            lit("HandWash=true"), std::span(&kAxis, 1));
  EXPECT_NEAR(grid.baseline_prior_divergence, 0.0, 1e-12);
  EXPECT_NEAR(grid.baseline.prob_positive, 0.5, 1e-12);
  EXPECT_GE(grid.generative.prob_positive, 0.55);
  EXPECT_GT(grid.generative_prior_divergence, 0.0);

  const GapReport mh = generalization_gap(testing::generalize_problem(5), testing::generalize_flat(5),
                                          lit("HandWash=true"), McmcConfig{}, 1);
  EXPECT_NEAR(mh.baseline_prior_divergence, 0.0, 1e-12);
  EXPECT_GE(mh.generative.prob_positive, 0.55);
  EXPECT_GT(mh.generative_prior_divergence, 0.0);
  EXPECT_EQ(mh.target, lit("HandWash=true"));
}

TEST(GeneralizationGapTest, EmptyObservationsGiveAnalyticPriors) {
  Scenario s = builtin_scenario("generalize");
  s.observations.observations.clear();
  const GapReport r = generalization_gap(make_inference_problem(s.bundle, s.observations),
                                         make_flat_problem(s.bundle, s.observations),
                                         lit("HandWash=true"), McmcConfig{}, 1);
  EXPECT_EQ(r.generative_prior_divergence, 0.0);
  EXPECT_EQ(r.baseline_prior_divergence, 0.0);
  EXPECT_NEAR(r.generative.sd, 0.875, 1e-12);
}

// With a sharp report on an observed literal, both learners recover it.
TEST(GeneralizationGapTest, LowNoiseReportsAgreeOnObservedLiteral) {
  Scenario s = builtin_scenario("generalize");
  s.observations.observations = {ValueReport{lit("Vaccinated=true"), 3.75, 0.05}};
  const InferenceProblem gen = make_inference_problem(s.bundle, s.observations);
  const FlatProblem flat = make_flat_problem(s.bundle, s.observations);
  const PredictiveSummary a =
      predict_value(gen, grid_posterior(gen, std::span(&kAxis, 1)), lit("Vaccinated=true"));
  const PredictiveSummary b =
      baseline_predict(flat, baseline_grid_posterior(flat, std::span(&kAxis, 1)), lit("Vaccinated=true"));
  EXPECT_NEAR(a.mean, 3.75, 0.05);
  EXPECT_NEAR(b.mean, 3.75, 0.05);
  EXPECT_NEAR(a.mean, b.mean, 0.05);
}

}  // namespace
}  // namespace valgraph
