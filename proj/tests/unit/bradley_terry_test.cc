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

#include "pcc/bradley_terry.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"

namespace pcc {
namespace {

ComparisonCounts FromTable(const testing::CountTable& t, std::vector<std::string> items) {
  ComparisonCounts c;
  c.items = std::move(items);
  const int n = static_cast<int>(t.size());
  c.counts = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) c.counts(i, j) = t[i][j];
  }
  return c;
}

std::vector<std::string> Names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('A' + i)));
  return names;
}

TEST(TallyTest, CountsWinsPerOrderedPair) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"A", "B"}, {"A", "B"}, {"B", "A"}, {"C", "A"}};
  const auto c = Tally(pairs, Dimension::kHolistic, {"A", "B", "C"});
  EXPECT_EQ(c.counts(0, 1), 2);
  EXPECT_EQ(c.counts(1, 0), 1);
  EXPECT_EQ(c.counts(2, 0), 1);
  EXPECT_EQ(c.Total(), 4);
  EXPECT_EQ(c.IndexOf("C"), 2);
  EXPECT_EQ(c.IndexOf("Z"), -1);
}

TEST(TallyTest, RejectsSelfAndUnknown) {
  const std::vector<std::pair<std::string, std::string>> self = {{"A", "A"}};
  EXPECT_THROW(Tally(self, Dimension::kHolistic, {"A", "B"}), TallyError);
  const std::vector<std::pair<std::string, std::string>> unknown = {{"A", "Q"}};
  EXPECT_THROW(Tally(unknown, Dimension::kHolistic, {"A", "B"}), TallyError);
}

TEST(BradleyTerryTest, TwoItemsThreeToOne) {
  const auto fit = FitBradleyTerry(FromTable({{0, 3}, {1, 0}}, {"A", "B"}), "B");
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.beta.at("A"), std::log(3.0), 1e-9);
  EXPECT_EQ(fit.beta.at("B"), 0.0);
  EXPECT_NEAR(fit.WinProbability("A", "B"), 0.75, 1e-9);
  // Var = 1 / (n p (1 - p)) for a single pair.
  EXPECT_NEAR(fit.standard_error.at("A"), std::sqrt(1.0 / (4 * 0.75 * 0.25)), 1e-9);
  EXPECT_NEAR(fit.ci95.at("A").first, fit.beta.at("A") - kZ95 * fit.standard_error.at("A"), 1e-12);
}

TEST(BradleyTerryTest, TwoItemClosedFormGrid) {
  for (int a = 1; a <= 20; ++a) {
    for (int b = 1; b <= 20; ++b) {
      const auto fit = FitBradleyTerry(FromTable({{0, a}, {b, 0}}, {"A", "B"}), "B");
      EXPECT_NEAR(fit.beta.at("A"), std::log(static_cast<double>(a) / b), 1e-6);
    }
  }
}

TEST(BradleyTerryTest, SymmetricFourItemsAreEqual) {
  const testing::CountTable t = {{0, 5, 5, 5}, {5, 0, 5, 5}, {5, 5, 0, 5}, {5, 5, 5, 0}};
  const auto fit = FitBradleyTerry(FromTable(t, Names(4)), "D");
  for (const std::string item : {"A", "B", "C"}) {
    EXPECT_NEAR(fit.beta.at(item), 0.0, 1e-9);
    EXPECT_NEAR(fit.standard_error.at(item), fit.standard_error.at("A"), 1e-9);
  }
  EXPECT_EQ(fit.standard_error.at("D"), 0.0);
}

TEST(BradleyTerryTest, ThreeItemMatchesFrozenGridOptimum) {
  const testing::CountTable t = {{0, 2, 2}, {1, 0, 2}, {1, 1, 0}};
  const auto fit = FitBradleyTerry(FromTable(t, Names(3)), "C");
  // Exhaustive 1e-3 lattice optimum, computed once and frozen.
  EXPECT_NEAR(fit.beta.at("A"), 0.936, 1e-3);
  EXPECT_NEAR(fit.beta.at("B"), 0.468, 1e-3);
  EXPECT_GE(fit.log_likelihood, -5.782315136150864 - 1e-9);

  const auto oracle = testing::GridSearchMle(t, 2, -3.0, 3.0, /*full_grid=*/true);
  EXPECT_NEAR(fit.beta.at("A"), oracle.beta[0], 1e-3);
  EXPECT_NEAR(fit.beta.at("B"), oracle.beta[1], 1e-3);
  EXPECT_GE(fit.log_likelihood, oracle.log_likelihood - 1e-6);
}

TEST(BradleyTerryTest, LogLikelihoodAgreesWithOracle) {
  const testing::CountTable t = {{0, 3, 1, 4}, {2, 0, 5, 1}, {6, 2, 0, 3}, {1, 4, 2, 0}};
  const std::vector<double> beta = {0.3, -0.2, 0.7, 0.0};
  EXPECT_NEAR(BTLogLikelihood(FromTable(t, Names(4)).counts, Eigen::Map<const Eigen::VectorXd>(
                                                                 beta.data(), 4)),
              testing::OracleLogLikelihood(t, beta), 1e-12);
}

TEST(BradleyTerryTest, ScoreEquationsHoldAtTheFit) {
  std::mt19937 gen(11);
  std::uniform_int_distribution<int> entry(1, 10);
  for (int rep = 0; rep < 20; ++rep) {
    testing::CountTable t(4, std::vector<int>(4, 0));
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) t[i][j] = entry(gen);
      }
    }
    const auto fit = FitBradleyTerry(FromTable(t, Names(4)), "A");
    const auto names = Names(4);
    for (int i = 1; i < 4; ++i) {
      double wins = 0, expected = 0;
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        wins += t[i][j];
        expected += (t[i][j] + t[j][i]) * fit.WinProbability(names[i], names[j]);
      }
      EXPECT_NEAR(wins, expected, 1e-6);
    }
  }
}

TEST(BradleyTerryTest, ReferenceChangeTranslates) {
  const testing::CountTable t = {{0, 4, 2}, {3, 0, 5}, {1, 2, 0}};
  const auto by_a = FitBradleyTerry(FromTable(t, Names(3)), "A");
  const auto by_c = FitBradleyTerry(FromTable(t, Names(3)), "C");
  const double shift = by_c.beta.at("A");
  for (const std::string item : {"A", "B", "C"}) {
    EXPECT_NEAR(by_c.beta.at(item) - shift, by_a.beta.at(item), 1e-7);
  }
  EXPECT_NEAR(by_a.log_likelihood, by_c.log_likelihood, 1e-9);
}

TEST(BradleyTerryTest, RelabellingPermutesEstimates) {
  const testing::CountTable t = {{0, 4, 2}, {3, 0, 5}, {1, 2, 0}};
  // Reverse the item order.
  const testing::CountTable r = {{0, 2, 1}, {5, 0, 3}, {2, 4, 0}};
  const auto fit = FitBradleyTerry(FromTable(t, {"x", "y", "z"}), "y");
  const auto rev = FitBradleyTerry(FromTable(r, {"z", "y", "x"}), "y");
  for (const std::string item : {"x", "y", "z"}) {
    EXPECT_NEAR(fit.beta.at(item), rev.beta.at(item), 1e-9);
  }
}

TEST(BradleyTerryTest, ItemsWithoutComparisonsAreLeftOut) {
  const testing::CountTable t = {{0, 3, 0}, {1, 0, 0}, {0, 0, 0}};
  const auto fit = FitBradleyTerry(FromTable(t, Names(3)), "B");
  EXPECT_EQ(fit.items, (std::vector<std::string>{"A", "B"}));
  EXPECT_FALSE(fit.beta.contains("C"));
}

TEST(BradleyTerryTest, NonexistentMleIsReported) {
  auto kind_of = [](const testing::CountTable& t, const std::string& ref) {
    try {
      FitBradleyTerry(FromTable(t, Names(static_cast<int>(t.size()))), ref);
    } catch (const FitError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "fit succeeded";
    return FitError::Kind::kNoReferenceData;
  };
  EXPECT_EQ(kind_of({{0, 3}, {0, 0}}, "B"), FitError::Kind::kDivergent);
  EXPECT_EQ(kind_of({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}, "A"),
            FitError::Kind::kDisconnected);
  EXPECT_EQ(kind_of({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}, "C"), FitError::Kind::kNoReferenceData);
}

}  // namespace
}  // namespace pcc
