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

// Posterior machinery shared by both learners: a seeded random-walk
// Metropolis-Hastings sampler, an exact grid quadrature used as its oracle,
// and predictive summaries of pushed-forward draws.

#ifndef VALGRAPH_POSTERIOR_HPP_
#define VALGRAPH_POSTERIOR_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "valgraph/world_model.hpp"

namespace valgraph {

using LogDensity = std::function<double(std::span<const double>)>;

struct McmcConfig {
  std::size_t samples = 10000;
  std::size_t burn_in = 2000;
  double step_size = 7.0;

  /// Throws ConfigError unless samples >= 1000, burn_in < samples and
  /// step_size > 0.
  void validate() const;
};

struct PosteriorSamples {
  std::vector<Literal> parameters;
  /// One row per retained draw, one column per parameter.
  std::vector<std::vector<double>> draws;
  std::uint64_t seed = 0;
  McmcConfig config;
  double acceptance_rate = 0.0;

  std::vector<double> column(std::size_t parameter) const;

  /// A single draw at `point`; used to push a known reward point through the
  /// predictive machinery.
  static PosteriorSamples point_mass(std::vector<Literal> parameters, std::vector<double> point);
};

/// Random-walk Metropolis-Hastings with independent Gaussian increments of
/// scale `config.step_size` on every coordinate, started at `initial`.
/// Deterministic given (density, config, seed).
PosteriorSamples random_walk_metropolis(std::vector<Literal> parameters,
                                        std::vector<double> initial, const LogDensity& log_density,
                                        const McmcConfig& config, std::uint64_t seed);

struct GridAxis {
  double lo = -20.0;
  double hi = 20.0;
  double step = 0.05;

  /// lo, lo + step, ... up to hi (inclusive, with a 1e-9 step slack).
  std::vector<double> points() const;
};

struct CoordinateSummary {
  double mean = 0.0;
  double sd = 0.0;
  /// Posterior mass strictly below zero.
  double prob_negative = 0.0;
  /// Coordinate of the maximum-mass grid point.
  double mode = 0.0;
};

struct GridPosterior {
  static constexpr std::size_t kMaxPoints = 1'000'000;
  static constexpr std::size_t kMaxDimensions = 3;

  std::vector<Literal> parameters;
  std::vector<std::vector<double>> axes;
  /// Normalized mass; the last parameter varies fastest.
  std::vector<double> mass;
  std::vector<CoordinateSummary> coordinates;
  /// Maximum-mass point; the lowest flat index wins ties.
  std::vector<double> map_point;

  std::size_t size() const noexcept { return mass.size(); }
  std::vector<double> point(std::size_t flat_index) const;
  /// Normalized marginal mass along one axis.
  std::vector<double> marginal(std::size_t parameter) const;
};

/// Evaluates exp(log_density) on the product grid and normalizes. `axes`
/// holds one axis per parameter, or a single axis shared by all of them.
/// Throws GridTooLargeError and ConfigError.
GridPosterior grid_posterior(std::vector<Literal> parameters, std::span<const GridAxis> axes,
                             const LogDensity& log_density);

struct PredictiveSummary {
  Literal target;
  double mean = 0.0;
  double sd = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
  /// Mass strictly above zero.
  double prob_positive = 0.0;
};

/// Weighted summary. Quantiles are the smallest value whose cumulative
/// weight reaches the level; an all-equal sample gives sd exactly 0.
PredictiveSummary summarize(const Literal& target, std::span<const double> values,
                            std::span<const double> weights);
PredictiveSummary summarize(const Literal& target, std::span<const double> values);

/// Summary of N(mean, sd^2); sd == 0 gives a point mass.
PredictiveSummary gaussian_summary(const Literal& target, double mean, double sd);

}  // namespace valgraph

#endif  // VALGRAPH_POSTERIOR_HPP_
