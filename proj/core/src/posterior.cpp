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

#include "valgraph/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "valgraph/errors.hpp"

namespace valgraph {

namespace {

// Upper 5% point of the standard normal.
constexpr double kZ95 = 1.6448536269514722;

std::size_t axis_length(const GridAxis& axis) {
  if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi) || !std::isfinite(axis.step) ||
      axis.step <= 0.0 || axis.hi < axis.lo) {
    throw ConfigError("grid axis needs finite lo <= hi and step > 0");
  }
  const double span = (axis.hi - axis.lo) / axis.step + 1e-9;
  if (span >= static_cast<double>(GridPosterior::kMaxPoints)) {
    throw GridTooLargeError("grid axis has more than " +
                            std::to_string(GridPosterior::kMaxPoints) + " points");
  }
  return static_cast<std::size_t>(std::floor(span)) + 1;
}

}  // namespace

void McmcConfig::validate() const {
  if (samples < 1000) throw ConfigError("samples must be at least 1000");
  if (burn_in >= samples) throw ConfigError("burn_in must be smaller than samples");
  if (!std::isfinite(step_size) || step_size <= 0.0) {
    throw ConfigError("step_size must be positive");
  }
}

std::vector<double> PosteriorSamples::column(std::size_t parameter) const {
  std::vector<double> out;
  out.reserve(draws.size());
  for (const auto& row : draws) out.push_back(row.at(parameter));
  return out;
}

PosteriorSamples PosteriorSamples::point_mass(std::vector<Literal> parameters,
                                              std::vector<double> point) {
  PosteriorSamples out;
  out.parameters = std::move(parameters);
  out.draws.push_back(std::move(point));
  out.acceptance_rate = 0.0;
  return out;
}

PosteriorSamples random_walk_metropolis(std::vector<Literal> parameters,
                                        std::vector<double> initial, const LogDensity& log_density,
                                        const McmcConfig& config, std::uint64_t seed) {
  config.validate();
  if (initial.size() != parameters.size()) {
    throw ConfigError("initial point has the wrong dimension");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> increment(0.0, config.step_size);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  PosteriorSamples out;
  out.parameters = std::move(parameters);
  out.seed = seed;
  out.config = config;
  out.draws.reserve(config.samples - config.burn_in);

  std::vector<double> current = std::move(initial);
  double current_lp = log_density(current);
  std::vector<double> proposal(current.size());
  std::size_t accepted = 0;

  for (std::size_t i = 0; i < config.samples; ++i) {
    for (std::size_t d = 0; d < current.size(); ++d) proposal[d] = current[d] + increment(rng);
    const double proposal_lp = log_density(proposal);
    const double u = unit(rng);
    const bool accept = std::isnan(current_lp) || current_lp == -INFINITY ||
                        (std::isfinite(proposal_lp) && std::log(u) < proposal_lp - current_lp);
    if (accept) {
      std::swap(current, proposal);
      current_lp = proposal_lp;
      ++accepted;
    }
    if (i >= config.burn_in) out.draws.push_back(current);
  }
  out.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(config.samples);
  return out;
}

std::vector<double> GridAxis::points() const {
  const std::size_t n = axis_length(*this);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

std::vector<double> GridPosterior::point(std::size_t flat_index) const {
  std::vector<double> out(axes.size());
  for (std::size_t d = axes.size(); d-- > 0;) {
    out[d] = axes[d][flat_index % axes[d].size()];
    flat_index /= axes[d].size();
  }
  return out;
}

std::vector<double> GridPosterior::marginal(std::size_t parameter) const {
  const std::size_t len = axes.at(parameter).size();
  std::size_t inner = 1;
  for (std::size_t d = parameter + 1; d < axes.size(); ++d) inner *= axes[d].size();
  std::vector<double> out(len, 0.0);
  for (std::size_t i = 0; i < mass.size(); ++i) out[(i / inner) % len] += mass[i];
  return out;
}

GridPosterior grid_posterior(std::vector<Literal> parameters, std::span<const GridAxis> axes,
                             const LogDensity& log_density) {
  const std::size_t dims = parameters.size();
  if (dims > GridPosterior::kMaxDimensions) {
    throw GridTooLargeError("grid quadrature supports at most " +
                            std::to_string(GridPosterior::kMaxDimensions) +
                            " free parameters, got " + std::to_string(dims));
  }
  if (dims > 0 && axes.size() != 1 && axes.size() != dims) {
    throw ConfigError("need one grid axis per free parameter or a single shared axis");
  }

  GridPosterior out;
  out.parameters = std::move(parameters);
  double total = 1.0;
  for (std::size_t d = 0; d < dims; ++d) {
    out.axes.push_back((axes.size() == 1 ? axes[0] : axes[d]).points());
    total *= static_cast<double>(out.axes.back().size());
  }
  if (total > static_cast<double>(GridPosterior::kMaxPoints)) {
    throw GridTooLargeError("grid has " + std::to_string(static_cast<std::uint64_t>(total)) +
                            " points; the limit is " +
                            std::to_string(GridPosterior::kMaxPoints));
  }
  const auto count = static_cast<std::size_t>(total);

  std::vector<double> log_mass(count);
  double top = -INFINITY;
  std::size_t best = 0;
  for (std::size_t i = 0; i < count; ++i) {
    log_mass[i] = log_density(out.point(i));
    if (log_mass[i] > top) {
      top = log_mass[i];
      best = i;
    }
  }
  if (!std::isfinite(top)) throw ConfigError("log density is not finite anywhere on the grid");

  out.mass.resize(count);
  double norm = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    out.mass[i] = std::exp(log_mass[i] - top);
    norm += out.mass[i];
  }
  for (double& m : out.mass) m /= norm;
  out.map_point = out.point(best);

  for (std::size_t d = 0; d < dims; ++d) {
    const std::vector<double> marg = out.marginal(d);
    const auto& axis = out.axes[d];
    CoordinateSummary s;
    for (std::size_t i = 0; i < axis.size(); ++i) {
      s.mean += marg[i] * axis[i];
      if (axis[i] < 0.0) s.prob_negative += marg[i];
    }
    double var = 0.0;
    for (std::size_t i = 0; i < axis.size(); ++i) {
      var += marg[i] * (axis[i] - s.mean) * (axis[i] - s.mean);
    }
    s.sd = std::sqrt(var);
    s.mode = out.map_point[d];
    out.coordinates.push_back(s);
  }
  return out;
}

PredictiveSummary summarize(const Literal& target, std::span<const double> values,
                            std::span<const double> weights) {
  if (values.empty() || values.size() != weights.size()) {
    throw ConfigError("summary needs one weight per value and at least one value");
  }
  PredictiveSummary s;
  s.target = target;

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw ConfigError("summary weights must have positive total");

  if (*lo == *hi) {
    s.mean = s.q05 = s.q50 = s.q95 = *lo;
    s.sd = 0.0;
    s.prob_positive = *lo > 0.0 ? 1.0 : 0.0;
    return s;
  }

  double mean = 0.0, positive = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    mean += weights[i] * values[i];
    if (values[i] > 0.0) positive += weights[i];
  }
  mean /= total;
  double var = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    var += weights[i] * (values[i] - mean) * (values[i] - mean);
  }
  s.mean = mean;
  s.sd = std::sqrt(var / total);
  s.prob_positive = std::clamp(positive / total, 0.0, 1.0);

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  const double levels[3] = {0.05, 0.50, 0.95};
  double* slots[3] = {&s.q05, &s.q50, &s.q95};
  std::size_t next = 0;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < order.size() && next < 3; ++k) {
    cumulative += weights[order[k]] / total;
    while (next < 3 && cumulative >= levels[next] - 1e-12) *slots[next++] = values[order[k]];
  }
  while (next < 3) *slots[next++] = values[order.back()];
  return s;
}

PredictiveSummary summarize(const Literal& target, std::span<const double> values) {
  const std::vector<double> weights(values.size(), 1.0);
  return summarize(target, values, weights);
}

PredictiveSummary gaussian_summary(const Literal& target, double mean, double sd) {
  PredictiveSummary s;
  s.target = target;
  s.mean = mean;
  s.sd = sd;
  if (sd == 0.0) {
    s.q05 = s.q50 = s.q95 = mean;
    s.prob_positive = mean > 0.0 ? 1.0 : 0.0;
    return s;
  }
  s.q05 = mean - kZ95 * sd;
  s.q50 = mean;
  s.q95 = mean + kZ95 * sd;
  s.prob_positive = 0.5 * std::erfc(-(mean / sd) / std::sqrt(2.0));
  return s;
}

}  // namespace valgraph
