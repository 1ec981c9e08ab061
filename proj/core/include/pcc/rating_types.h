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

#ifndef PCC_RATING_TYPES_H_
#define PCC_RATING_TYPES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcc/corpus.h"

namespace pcc {

enum class ParticipantStatus {
  kActive,
  kCompleted,
  kExcludedComprehension,
  kExcludedIncomplete,
};

std::string_view StatusName(ParticipantStatus s);

struct Participant {
  std::string participant_id;
  std::string enrolled_at;
  ParticipantStatus status = ParticipantStatus::kActive;

  bool operator==(const Participant&) const = default;
};

enum class TaskPosition { kFirst, kSecond };

// One side-by-side comparison. Constitution and vignette ids are denormalized
// from the suite so a record log can be analysed without it.
struct ComparisonTask {
  std::string task_id;
  std::string participant_id;
  TaskPosition position = TaskPosition::kFirst;
  std::string left_run_id;
  std::string right_run_id;
  std::string left_constitution;
  std::string right_constitution;
  std::string left_vignette;
  std::string right_vignette;
  std::uint64_t left_right_order_seed = 0;

  bool operator==(const ComparisonTask&) const = default;
};

enum class Choice { kLeft, kRight, kSkipped };

std::string_view ChoiceName(Choice c);
std::optional<Choice> ParseChoice(std::string_view s);

struct ComparisonResponse {
  std::string task_id;
  std::map<Dimension, Choice> choices;
  std::vector<bool> comprehension_results;  // one per shown dialogue
  std::string submitted_at;

  bool operator==(const ComparisonResponse&) const = default;
};

enum class ExclusionRule { kComprehensionFail, kIncomplete };

std::string_view RuleName(ExclusionRule r);

struct ExclusionReport {
  std::string participant_id;
  ExclusionRule rule = ExclusionRule::kIncomplete;
  std::string detail;

  bool operator==(const ExclusionReport&) const = default;
};

// A single preference on one dimension, mapped back to constitutions.
struct PairwiseOutcome {
  std::string winner;
  std::string loser;
  std::string winner_vignette;
  std::string loser_vignette;
  std::string task_id;

  bool operator==(const PairwiseOutcome&) const = default;
};

using ComparisonsByDimension = std::map<Dimension, std::vector<PairwiseOutcome>>;

}  // namespace pcc

#endif  // PCC_RATING_TYPES_H_
