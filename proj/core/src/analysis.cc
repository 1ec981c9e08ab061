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

#include "pcc/analysis.h"

#include <cmath>

#include "pcc/rng.h"

namespace pcc {

WinRateMatrix WinRates(const ComparisonCounts& counts) {
  WinRateMatrix m;
  m.dimension = counts.dimension;
  m.items = counts.items;
  const int n = static_cast<int>(counts.items.size());
  m.rates.assign(n, std::vector<std::optional<double>>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int games = counts.counts(i, j) + counts.counts(j, i);
      if (i != j && games > 0) m.rates[i][j] = static_cast<double>(counts.counts(i, j)) / games;
    }
  }
  return m;
}

AnalysisResults FitAllDimensions(const ComparisonsByDimension& comparisons,
                                 std::vector<std::string> items, const std::string& reference,
                                 const BTOptions& options) {
  AnalysisResults results;
  results.reference = reference;
  results.items = std::move(items);
  for (Dimension dim : kAllDimensions) {
    DimensionResult r;
    r.dimension = dim;
    std::vector<std::pair<std::string, std::string>> pairs;
    if (auto it = comparisons.find(dim); it != comparisons.end()) {
      for (const auto& o : it->second) pairs.emplace_back(o.winner, o.loser);
    }
    try {
      r.counts = Tally(pairs, dim, results.items);
      r.win_rates = WinRates(r.counts);
      if (r.counts.Total() == 0) {
        r.status = DimensionStatus::kEmpty;
      } else {
        r.fit = FitBradleyTerry(r.counts, reference, options);
        r.status = DimensionStatus::kFitted;
      }
    } catch (const std::exception& e) {
      r.status = DimensionStatus::kFailed;
      r.error = e.what();
    }
    results.dimensions.push_back(std::move(r));
  }
  return results;
}

std::vector<std::pair<std::string, std::string>> SimulateComparisons(
    const std::vector<std::pair<std::string, double>>& beta_true, int n_per_pair,
    std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < beta_true.size(); ++i) {
    for (std::size_t j = i + 1; j < beta_true.size(); ++j) {
      const double p = 1.0 / (1.0 + std::exp(beta_true[j].second - beta_true[i].second));
      for (int k = 0; k < n_per_pair; ++k) {
        if (UniformUnit(rng) < p) {
          out.emplace_back(beta_true[i].first, beta_true[j].first);
        } else {
          out.emplace_back(beta_true[j].first, beta_true[i].first);
        }
      }
    }
  }
  return out;
}

}  // namespace pcc
