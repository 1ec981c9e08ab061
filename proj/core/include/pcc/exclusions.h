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

#ifndef PCC_EXCLUSIONS_H_
#define PCC_EXCLUSIONS_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pcc/rating_types.h"

namespace pcc {

struct ExclusionPolicy {
  int max_comprehension_failures = 1;  // more than this excludes
  int required_responses = 2;
};

struct ExclusionOutcome {
  std::set<std::string> included;
  std::vector<ExclusionReport> reports;  // sorted by (participant, rule)
  std::map<std::string, ParticipantStatus> statuses;
};

// Post-hoc exclusion: more than one failed comprehension check across a
// participant's responses, or fewer than the required number of responses.
// Independent of input order.
ExclusionOutcome ApplyExclusions(std::span<const Participant> participants,
                                 std::span<const ComparisonTask> tasks,
                                 std::span<const ComparisonResponse> responses,
                                 const ExclusionPolicy& policy = {});

// One outcome per (response, non-skipped dimension) for responses whose
// participant is in `included`. Responses are visited in task-id order.
ComparisonsByDimension ExtractComparisons(
    std::span<const ComparisonTask> tasks,
    std::span<const ComparisonResponse> responses,
    const std::set<std::string>& included);

}  // namespace pcc

#endif  // PCC_EXCLUSIONS_H_
