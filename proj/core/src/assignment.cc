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

#include "pcc/rng.h"

namespace pcc {
namespace {

int IndexIn(std::span<const std::string> items, std::string_view id) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == id) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::string> VignettesWith(std::span<const SuiteEntry> suite,
                                       std::string_view constitution) {
  std::set<std::string> out;
  for (const auto& e : suite) {
    if (e.constitution_id == constitution) out.insert(e.vignette_id);
  }
  return {out.begin(), out.end()};
}

const SuiteEntry& EntryFor(std::span<const SuiteEntry> suite, std::string_view vignette,
                           std::string_view constitution) {
  for (const auto& e : suite) {
    if (e.vignette_id == vignette && e.constitution_id == constitution) return e;
  }
  throw AssignmentError("no run for " + std::string(vignette) + " x " +
                        std::string(constitution));
}

}  // namespace

int MatchingIndexOf(const std::pair<ComparisonTask, ComparisonTask>& tasks,
                    std::span<const std::string> constitutions) {
  if (constitutions.size() != 4) return -1;
  const int a = IndexIn(constitutions, tasks.first.left_constitution);
  const int b = IndexIn(constitutions, tasks.first.right_constitution);
  const int c = IndexIn(constitutions, tasks.second.left_constitution);
  const int d = IndexIn(constitutions, tasks.second.right_constitution);
  if (a < 0 || b < 0 || c < 0 || d < 0) return -1;
  if (std::set<int>{a, b, c, d}.size() != 4) return -1;
  // The partner of item 0 identifies the matching.
  int partner = -1;
  if (a == 0) partner = b;
  if (b == 0) partner = a;
  if (c == 0) partner = d;
  if (d == 0) partner = c;
  return partner - 1;
}

std::pair<ComparisonTask, ComparisonTask> AssignTasks(std::string_view participant_id,
                                                      std::span<const SuiteEntry> suite,
                                                      std::span<const std::string> constitutions,
                                                      std::uint64_t seed,
                                                      const AssignmentOptions& options) {
  if (constitutions.size() != 4) {
    throw AssignmentError("assignment needs exactly four constitutions, got " +
                          std::to_string(constitutions.size()));
  }
  for (const auto& c : constitutions) {
    if (VignettesWith(suite, c).empty()) throw AssignmentError("no run for constitution " + c);
  }

  Rng rng(seed);
  const auto& matching = kMatchings[UniformIndex(rng, kMatchings.size())];
  const bool swap_tasks = UniformIndex(rng, 2) == 1;

  std::array<ComparisonTask, 2> tasks;
  for (int k = 0; k < 2; ++k) {
    const auto [i, j] = matching[swap_tasks ? 1 - k : k];
    std::string left = constitutions[i];
    std::string right = constitutions[j];
    std::string left_vignette;
    std::string right_vignette;
    if (options.same_vignette_pairs) {
      const auto li = VignettesWith(suite, left);
      const auto ri = VignettesWith(suite, right);
      std::vector<std::string> shared;
      std::set_intersection(li.begin(), li.end(), ri.begin(), ri.end(),
                            std::back_inserter(shared));
      if (shared.empty()) {
        throw AssignmentError("no vignette has runs for both " + left + " and " + right);
      }
      left_vignette = right_vignette = shared[UniformIndex(rng, shared.size())];
    } else {
      const auto li = VignettesWith(suite, left);
      const auto ri = VignettesWith(suite, right);
      left_vignette = li[UniformIndex(rng, li.size())];
      right_vignette = ri[UniformIndex(rng, ri.size())];
    }

    ComparisonTask& task = tasks[k];
    task.left_right_order_seed = rng();
    if (task.left_right_order_seed & 1) {
      std::swap(left, right);
      std::swap(left_vignette, right_vignette);
    }
    task.participant_id = participant_id;
    task.task_id = std::string(participant_id) + "-t" + std::to_string(k + 1);
    task.position = k == 0 ? TaskPosition::kFirst : TaskPosition::kSecond;
    task.left_run_id = EntryFor(suite, left_vignette, left).run_id;
    task.right_run_id = EntryFor(suite, right_vignette, right).run_id;
    task.left_constitution = std::move(left);
    task.right_constitution = std::move(right);
    task.left_vignette = std::move(left_vignette);
    task.right_vignette = std::move(right_vignette);
  }
  return {std::move(tasks[0]), std::move(tasks[1])};
}

}  // namespace pcc
