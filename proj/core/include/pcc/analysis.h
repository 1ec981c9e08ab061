// Copyright 2026 The PCC Constitutions Authors.
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

#ifndef PCC_ANALYSIS_H_
#define PCC_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcc/bradley_terry.h"
#include "pcc/rating_types.h"

namespace pcc {

struct WinRateMatrix {
  Dimension dimension = Dimension::kHolistic;
  std::vector<std::string> items;
  // rates[i][j] = share of i-vs-j comparisons won by i; nullopt when the pair
  // was never compared.
  std::vector<std::vector<std::optional<double>>> rates;
};

WinRateMatrix WinRates(const ComparisonCounts& counts);

enum class DimensionStatus { kFitted, kEmpty, kFailed };

struct DimensionResult {
  Dimension dimension = Dimension::kHolistic;
  DimensionStatus status = DimensionStatus::kEmpty;
  ComparisonCounts counts;
  WinRateMatrix win_rates;
  std::optional<BTFit> fit;
  std::string error;  // kFailed only
};

struct AnalysisResults {
  std::string reference;
  std::vector<std::string> items;
  std::vector<DimensionResult> dimensions;  // kAllDimensions order
};

// Tally, win rates and a Bradley-Terry fit for each of the seven dimensions.
// A dimension without comparisons is kEmpty; a fit error is recorded on its
// dimension and does not stop the others.
AnalysisResults FitAllDimensions(const ComparisonsByDimension& comparisons,
                                 std::vector<std::string> items,
                                 const std::string& reference,
                                 const BTOptions& options = {});

// Draws n_per_pair outcomes for every unordered pair (i < j in `beta_true`
// order) with P(i beats j) = e^b_i / (e^b_i + e^b_j). Deterministic in seed.
std::vector<std::pair<std::string, std::string>> SimulateComparisons(
    const std::vector<std::pair<std::string, double>>& beta_true,
    int n_per_pair, std::uint64_t seed);

// Results bundle: {"reference", "items", "dimensions":[{dimension, status,
// counts, win_rates, beta, se, ci95, log_likelihood, converged, ...}]}.
std::string ResultsToJson(const AnalysisResults& results);

// One row per (dimension, item): dimension, constitution, beta, ci_low,
// ci_high.
std::string ResultsToPlotTsv(const AnalysisResults& results);

// Human-readable per-dimension win-rate tables and beta +- CI.
std::string ResultsSummary(const AnalysisResults& results);

}  // namespace pcc

#endif  // PCC_ANALYSIS_H_
