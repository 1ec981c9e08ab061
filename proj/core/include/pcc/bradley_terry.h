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

#ifndef PCC_BRADLEY_TERRY_H_
#define PCC_BRADLEY_TERRY_H_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "Eigen/Core"
#include "pcc/corpus.h"

namespace pcc {

// counts(i, j) = number of times items[i] beat items[j]. Diagonal is zero.
struct ComparisonCounts {
  Dimension dimension = Dimension::kHolistic;
  std::vector<std::string> items;
  Eigen::MatrixXi counts;

  int Total() const { return counts.sum(); }
  int IndexOf(std::string_view item) const;  // -1 when absent
};

class TallyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws TallyError for a self-comparison or an item not in `items`.
ComparisonCounts Tally(std::span<const std::pair<std::string, std::string>> pairs,
                       Dimension dimension, std::vector<std::string> items);

struct BTOptions {
  double tolerance = 1e-8;  // on the max-norm of the score
  int max_iterations = 200;
};

struct BTFit {
  Dimension dimension = Dimension::kHolistic;
  std::string reference;
  std::vector<std::string> items;  // items that entered the fit
  std::map<std::string, double> beta;
  std::map<std::string, double> standard_error;
  std::map<std::string, std::pair<double, double>> ci95;
  double log_likelihood = 0.0;
  bool converged = false;
  int iterations = 0;
  double gradient_max_norm = 0.0;

  // P(a beats b) under the fitted strengths.
  double WinProbability(std::string_view a, std::string_view b) const;
};

class FitError : public std::runtime_error {
 public:
  enum class Kind { kNoReferenceData, kDisconnected, kDivergent };

  FitError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr double kZ95 = 1.96;

// Log-likelihood sum_{i != j} c_ij (b_i - log(e^b_i + e^b_j)).
double BTLogLikelihood(const Eigen::MatrixXi& counts,
                       const Eigen::VectorXd& beta);

// Maximum-likelihood Bradley-Terry strengths with beta[reference] = 0, fitted
// by damped Newton on the free parameters. Items without any comparison are
// left out. Standard errors come from the inverse observed information and
// ci95 = beta +- 1.96 se. Throws FitError when the MLE does not exist.
BTFit FitBradleyTerry(const ComparisonCounts& counts,
                      std::string_view reference, const BTOptions& options = {});

}  // namespace pcc

#endif  // PCC_BRADLEY_TERRY_H_
