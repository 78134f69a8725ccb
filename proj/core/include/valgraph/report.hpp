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

// Tabular output. Every table is CSV with a header row; numbers carry 9
// significant digits.

#ifndef VALGRAPH_REPORT_HPP_
#define VALGRAPH_REPORT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valgraph/baseline.hpp"
#include "valgraph/posterior.hpp"
#include "valgraph/value_engine.hpp"

namespace valgraph {

/// `%.9g`, with negative zero printed as 0.
std::string format_number(double x);

/// `literal,intrinsic,value`, all literals or just `only`.
std::string values_csv(const ValueTable& values, const RewardTable& rewards,
                       const std::optional<Literal>& only = std::nullopt);

/// `term,amount`: `intrinsic`, one row per child, `total`.
std::string explanation_csv(const ValueExplanation& explanation);

/// Header of parameter literals, one row per retained draw.
std::string samples_csv(const PosteriorSamples& samples);

/// Reads a table written by `samples_csv`. Throws ParseError.
PosteriorSamples parse_samples_csv(std::string_view text);

/// `mean=... sd=... accept=...`, one line per parameter (prefixed with the
/// literal when there is more than one).
std::string samples_summary(const PosteriorSamples& samples);

/// One-parameter grids: `r,mass`. Otherwise the parameter literals, then
/// `mass`.
std::string grid_csv(const GridPosterior& grid);
/// `mean=... p_neg=...` per parameter, same prefix rule as above.
std::string grid_summary(const GridPosterior& grid);

/// `target,mean,sd,q05,q50,q95,prob_positive`.
std::string summary_csv(const PredictiveSummary& summary);

/// `key,value` rows.
std::string gap_csv(const GapReport& report);
/// `key=value` lines with the same keys.
std::string gap_text(const GapReport& report);

}  // namespace valgraph

#endif  // VALGRAPH_REPORT_HPP_
