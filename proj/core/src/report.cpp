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

#include "valgraph/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "valgraph/errors.hpp"

namespace valgraph {

namespace {

std::vector<std::pair<std::string, std::string>> gap_rows(const GapReport& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("target", r.target.to_string());
  const auto side = [&rows](const std::string& prefix, const PredictiveSummary& s) {
    rows.emplace_back(prefix + "_mean", format_number(s.mean));
    rows.emplace_back(prefix + "_sd", format_number(s.sd));
    rows.emplace_back(prefix + "_q05", format_number(s.q05));
    rows.emplace_back(prefix + "_q50", format_number(s.q50));
    rows.emplace_back(prefix + "_q95", format_number(s.q95));
    rows.emplace_back(prefix + "_prob_positive", format_number(s.prob_positive));
  };
  side("generative", r.generative);
  side("baseline", r.baseline);
  rows.emplace_back("generative_prior_divergence", format_number(r.generative_prior_divergence));
  rows.emplace_back("baseline_prior_divergence", format_number(r.baseline_prior_divergence));
  return rows;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string prefix(const std::vector<Literal>& parameters, std::size_t i) {
  return parameters.size() > 1 ? parameters[i].to_string() + " " : std::string();
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string values_csv(const ValueTable& values, const RewardTable& rewards,
                       const std::optional<Literal>& only) {
  std::string out = "literal,intrinsic,value\n";
  const auto row = [&](const Literal& l, double v) {
    out += l.to_string() + "," + format_number(rewards.get(l)) + "," + format_number(v) + "\n";
  };
  if (only) {
    row(*only, values.at(*only));
  } else {
    for (const auto& [l, v] : values.entries()) row(l, v);
  }
  return out;
}

std::string explanation_csv(const ValueExplanation& e) {
  std::string out = "term,amount\n";
  out += "intrinsic," + format_number(e.intrinsic) + "\n";
  for (const auto& [child, amount] : e.contributions) {
    out += child.str() + "," + format_number(amount) + "\n";
  }
  out += "total," + format_number(e.total) + "\n";
  return out;
}

std::string samples_csv(const PosteriorSamples& samples) {
  std::string out;
  for (std::size_t i = 0; i < samples.parameters.size(); ++i) {
    out += (i ? "," : "") + samples.parameters[i].to_string();
  }
  out += "\n";
  for (const auto& draw : samples.draws) {
    for (std::size_t i = 0; i < draw.size(); ++i) out += (i ? "," : "") + format_number(draw[i]);
    out += "\n";
  }
  return out;
}

PosteriorSamples parse_samples_csv(std::string_view text) {
  PosteriorSamples out;
  auto lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("samples file is empty");
  if (!lines[0].empty()) {
    for (std::string_view field : split(lines[0], ',')) out.parameters.push_back(Literal::parse(field));
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<double> draw;
    if (!lines[i].empty() || !out.parameters.empty()) {
      for (std::string_view field : split(lines[i], ',')) {
        const std::string s(field);
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
          throw ParseError("samples line " + std::to_string(i + 1) + ": bad number '" + s + "'");
        }
        draw.push_back(v);
      }
    }
    if (draw.size() != out.parameters.size()) {
      throw ParseError("samples line " + std::to_string(i + 1) + " has " +
                       std::to_string(draw.size()) + " fields, expected " +
                       std::to_string(out.parameters.size()));
    }
    out.draws.push_back(std::move(draw));
  }
  if (out.draws.empty()) throw ParseError("samples file has no draws");
  return out;
}

std::string samples_summary(const PosteriorSamples& samples) {
  std::string out;
  const double n = static_cast<double>(samples.draws.size());
  for (std::size_t i = 0; i < samples.parameters.size(); ++i) {
    const std::vector<double> col = samples.column(i);
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / n;
    double var = 0.0;
    for (double x : col) var += (x - mean) * (x - mean);
    out += prefix(samples.parameters, i) + "mean=" + format_number(mean) +
           " sd=" + format_number(std::sqrt(var / n)) +
           " accept=" + format_number(samples.acceptance_rate) + "\n";
  }
  if (samples.parameters.empty()) {
    out += "accept=" + format_number(samples.acceptance_rate) + "\n";
  }
  return out;
}

std::string grid_csv(const GridPosterior& grid) {
  std::string out;
  if (grid.parameters.size() == 1) {
    out = "r,mass\n";
  } else {
    for (const Literal& l : grid.parameters) out += l.to_string() + ",";
    out += "mass\n";
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (double x : grid.point(i)) out += format_number(x) + ",";
    out += format_number(grid.mass[i]) + "\n";
  }
  return out;
}

std::string grid_summary(const GridPosterior& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.parameters.size(); ++i) {
    out += prefix(grid.parameters, i) + "mean=" + format_number(grid.coordinates[i].mean) +
           " p_neg=" + format_number(grid.coordinates[i].prob_negative) + "\n";
  }
  return out;
}

std::string summary_csv(const PredictiveSummary& s) {
  return "target,mean,sd,q05,q50,q95,prob_positive\n" + s.target.to_string() + "," +
         format_number(s.mean) + "," + format_number(s.sd) + "," + format_number(s.q05) + "," +
         format_number(s.q50) + "," + format_number(s.q95) + "," +
         format_number(s.prob_positive) + "\n";
}

std::string gap_csv(const GapReport& report) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : gap_rows(report)) out += k + "," + v + "\n";
  return out;
}

std::string gap_text(const GapReport& report) {
  std::string out;
  for (const auto& [k, v] : gap_rows(report)) out += k + "=" + v + "\n";
  return out;
}

}  // namespace valgraph
