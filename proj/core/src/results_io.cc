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

#include <cstdio>
#include <string>

#include "json.hpp"
#include "pcc/analysis.h"

namespace pcc {
namespace {

using Json = nlohmann::ordered_json;

std::string_view StatusLabel(DimensionStatus s) {
  switch (s) {
    case DimensionStatus::kFitted:
      return "fitted";
    case DimensionStatus::kEmpty:
      return "empty";
    case DimensionStatus::kFailed:
      return "failed";
  }
  return "";
}

std::string Format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

std::string ResultsToJson(const AnalysisResults& results) {
  Json dims = Json::array();
  for (const auto& d : results.dimensions) {
    Json counts = Json::object();
    Json rates = Json::object();
    for (std::size_t i = 0; i < d.counts.items.size(); ++i) {
      Json row = Json::object();
      Json rate_row = Json::object();
      for (std::size_t j = 0; j < d.counts.items.size(); ++j) {
        if (i == j) continue;
        row[d.counts.items[j]] = d.counts.counts(i, j);
        const auto& rate = d.win_rates.rates[i][j];
        rate_row[d.counts.items[j]] = rate ? Json(*rate) : Json(nullptr);
      }
      counts[d.counts.items[i]] = std::move(row);
      rates[d.counts.items[i]] = std::move(rate_row);
    }
    Json entry = {{"dimension", DimensionId(d.dimension)},
                  {"status", StatusLabel(d.status)},
                  {"total_comparisons", d.counts.items.empty() ? 0 : d.counts.Total()},
                  {"counts", std::move(counts)},
                  {"win_rates", std::move(rates)}};
    if (d.fit) {
      Json beta = Json::object();
      Json se = Json::object();
      Json ci = Json::object();
      for (const auto& item : d.fit->items) {
        beta[item] = d.fit->beta.at(item);
        se[item] = d.fit->standard_error.at(item);
        ci[item] = {d.fit->ci95.at(item).first, d.fit->ci95.at(item).second};
      }
      entry["beta"] = std::move(beta);
      entry["se"] = std::move(se);
      entry["ci95"] = std::move(ci);
      entry["log_likelihood"] = d.fit->log_likelihood;
      entry["converged"] = d.fit->converged;
      entry["iterations"] = d.fit->iterations;
    }
    if (!d.error.empty()) entry["error"] = d.error;
    dims.push_back(std::move(entry));
  }
  const Json j = {{"reference", results.reference},
                  {"items", results.items},
                  {"dimensions", std::move(dims)}};
  return j.dump(2) + "\n";
}

std::string ResultsToPlotTsv(const AnalysisResults& results) {
  std::string out = "dimension\tconstitution\tbeta\tci_low\tci_high\n";
  for (const auto& d : results.dimensions) {
    if (!d.fit) continue;
    for (const auto& item : results.items) {
      auto it = d.fit->beta.find(item);
      if (it == d.fit->beta.end()) continue;
      const auto [lo, hi] = d.fit->ci95.at(item);
      out += std::string(DimensionId(d.dimension)) + "\t" + item + "\t" +
             Format("%.6f", it->second) + "\t" + Format("%.6f", lo) + "\t" +
             Format("%.6f", hi) + "\n";
    }
  }
  return out;
}

std::string ResultsSummary(const AnalysisResults& results) {
  std::string out;
  for (const auto& d : results.dimensions) {
    out += std::string(DimensionId(d.dimension)) + " (" + std::string(StatusLabel(d.status));
    if (!d.counts.items.empty()) out += ", " + std::to_string(d.counts.Total()) + " comparisons";
    out += ")\n";
    if (d.status == DimensionStatus::kFailed) {
      out += "  error: " + d.error + "\n\n";
      continue;
    }
    if (d.status == DimensionStatus::kEmpty) {
      out += "\n";
      continue;
    }
    out += "  win rate (row beats column)\n";
    char buf[64];
    out += "  " + std::string(18, ' ');
    for (const auto& item : d.win_rates.items) {
      std::snprintf(buf, sizeof(buf), "%16s", item.c_str());
      out += buf;
    }
    out += "\n";
    for (std::size_t i = 0; i < d.win_rates.items.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "  %-18s", d.win_rates.items[i].c_str());
      out += buf;
      for (std::size_t j = 0; j < d.win_rates.items.size(); ++j) {
        const auto& r = d.win_rates.rates[i][j];
        if (r) {
          std::snprintf(buf, sizeof(buf), "%16.3f", *r);
        } else {
          std::snprintf(buf, sizeof(buf), "%16s", "-");
        }
        out += buf;
      }
      out += "\n";
    }
    out += "  strength (reference " + results.reference + ")\n";
    for (const auto& item : d.fit->items) {
      const auto [lo, hi] = d.fit->ci95.at(item);
      std::snprintf(buf, sizeof(buf), "  %-18s %8.3f  [%7.3f, %7.3f]\n", item.c_str(),
                    d.fit->beta.at(item), lo, hi);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace pcc
