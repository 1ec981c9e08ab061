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

#include "pcc/assignment.h"

#include <algorithm>
#include <set>

#include "gtest/gtest.h"
#include "pcc/rng.h"

namespace pcc {
namespace {

const std::vector<std::string> kConstitutions = {"best_practices", "doctor", "empathetic",
                                                 "none"};

std::vector<SuiteEntry> Suite() {
  std::vector<SuiteEntry> suite;
  for (const std::string v : {"vignette_1", "vignette_2"}) {
    for (const auto& c : kConstitutions) suite.push_back({v + "__" + c, v, c});
  }
  return suite;
}

TEST(AssignmentTest, TasksFormAPerfectMatching) {
  const auto suite = Suite();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto [t1, t2] = AssignTasks("P000001", suite, kConstitutions, seed);
    EXPECT_NE(t1.left_constitution, t1.right_constitution);
    EXPECT_NE(t2.left_constitution, t2.right_constitution);
    const std::set<std::string> covered = {t1.left_constitution, t1.right_constitution,
                                           t2.left_constitution, t2.right_constitution};
    EXPECT_EQ(covered.size(), 4u);
    EXPECT_EQ(t1.left_vignette, t1.right_vignette);
    EXPECT_EQ(t2.left_vignette, t2.right_vignette);
    EXPECT_EQ(t1.left_run_id, t1.left_vignette + "__" + t1.left_constitution);
    EXPECT_GE(MatchingIndexOf({t1, t2}, kConstitutions), 0);
  }
}

TEST(AssignmentTest, IdsAndPositions) {
  const auto suite = Suite();
  const auto [t1, t2] = AssignTasks("P000042", suite, kConstitutions, 5);
  EXPECT_EQ(t1.task_id, "P000042-t1");
  EXPECT_EQ(t2.task_id, "P000042-t2");
  EXPECT_EQ(t1.participant_id, "P000042");
  EXPECT_EQ(t1.position, TaskPosition::kFirst);
  EXPECT_EQ(t2.position, TaskPosition::kSecond);
}

TEST(AssignmentTest, DeterministicInSeed) {
  const auto suite = Suite();
  EXPECT_EQ(AssignTasks("P1", suite, kConstitutions, 99),
            AssignTasks("P1", suite, kConstitutions, 99));
}

TEST(AssignmentTest, MatchingsAndSidesAreBalanced) {
  const auto suite = Suite();
  constexpr int kDraws = 12000;
  std::array<int, 3> matching{};
  int first_left = 0;
  int vignette_1 = 0;
  for (int i = 0; i < kDraws; ++i) {
    const auto tasks = AssignTasks("P", suite, kConstitutions, MixSeed(7, i));
    ++matching[MatchingIndexOf(tasks, kConstitutions)];
    const auto& t = tasks.first;
    first_left += t.left_constitution < t.right_constitution ? 1 : 0;
    vignette_1 += t.left_vignette == "vignette_1" ? 1 : 0;
  }
  for (int m : matching) EXPECT_NEAR(m / static_cast<double>(kDraws), 1.0 / 3, 0.02);
  EXPECT_NEAR(first_left / static_cast<double>(kDraws), 0.5, 0.02);
  EXPECT_NEAR(vignette_1 / static_cast<double>(kDraws), 0.5, 0.02);
}

TEST(AssignmentTest, CrossVignetteDrawsEachSide) {
  const auto suite = Suite();
  AssignmentOptions options;
  options.same_vignette_pairs = false;
  int mixed = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto [t1, t2] = AssignTasks("P", suite, kConstitutions, seed, options);
    mixed += t1.left_vignette != t1.right_vignette ? 1 : 0;
  }
  EXPECT_GT(mixed, 100);
  EXPECT_LT(mixed, 300);
}

TEST(AssignmentTest, MissingRunIsAnError) {
  auto suite = Suite();
  suite.erase(std::remove_if(suite.begin(), suite.end(),
                             [](const SuiteEntry& e) { return e.constitution_id == "doctor"; }),
              suite.end());
  EXPECT_THROW(AssignTasks("P", suite, kConstitutions, 1), AssignmentError);
}

TEST(AssignmentTest, MatchingIndexRejectsOverlap) {
  ComparisonTask a{.left_constitution = "doctor", .right_constitution = "none"};
  ComparisonTask b{.left_constitution = "doctor", .right_constitution = "empathetic"};
  EXPECT_EQ(MatchingIndexOf({a, b}, kConstitutions), -1);
  b = {.left_constitution = "empathetic", .right_constitution = "best_practices"};
  EXPECT_EQ(MatchingIndexOf({a, b}, kConstitutions), 1);
}

}  // namespace
}  // namespace pcc
