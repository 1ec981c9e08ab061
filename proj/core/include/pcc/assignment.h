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

#ifndef PCC_ASSIGNMENT_H_
#define PCC_ASSIGNMENT_H_

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcc/rating_types.h"

namespace pcc {

// What the assigner needs to know about each generated dialogue.
struct SuiteEntry {
  std::string run_id;
  std::string vignette_id;
  std::string constitution_id;
};

struct AssignmentOptions {
  // Both dialogues of a task share a vignette. When false, the vignette is
  // drawn independently for each side.
  bool same_vignette_pairs = true;
};

class AssignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Perfect matchings of four items {0,1,2,3} into two unordered pairs.
inline constexpr std::array<std::array<std::pair<int, int>, 2>, 3>
    kMatchings = {{
        {{{0, 1}, {2, 3}}},
        {{{0, 2}, {1, 3}}},
        {{{0, 3}, {1, 2}}},
    }};

// Index into kMatchings realised by a task pair over `constitutions`
// (sorted ids); -1 if the tasks do not form a perfect matching.
int MatchingIndexOf(const std::pair<ComparisonTask, ComparisonTask>& tasks,
                    std::span<const std::string> constitutions);

// Draws a uniform perfect matching of the four constitutions, a vignette per
// task, and a left/right order per task. `constitutions` lists the four
// required ids; every one needs a run in `suite`. Deterministic in `seed`.
std::pair<ComparisonTask, ComparisonTask> AssignTasks(
    std::string_view participant_id, std::span<const SuiteEntry> suite,
    std::span<const std::string> constitutions, std::uint64_t seed,
    const AssignmentOptions& options = {});

}  // namespace pcc

#endif  // PCC_ASSIGNMENT_H_
