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

#include "pcc/exclusions.h"

#include <algorithm>
#include <array>

namespace pcc {
namespace {

constexpr std::array<std::string_view, 4> kStatusNames = {
    "active", "completed", "excluded_comprehension", "excluded_incomplete"};
constexpr std::array<std::string_view, 3> kChoiceNames = {"left", "right", "skipped"};
constexpr std::array<std::string_view, 2> kRuleNames = {"comprehension_fail", "incomplete"};

}  // namespace

std::string_view StatusName(ParticipantStatus s) { return kStatusNames[static_cast<int>(s)]; }
std::string_view ChoiceName(Choice c) { return kChoiceNames[static_cast<int>(c)]; }
std::string_view RuleName(ExclusionRule r) { return kRuleNames[static_cast<int>(r)]; }

std::optional<Choice> ParseChoice(std::string_view s) {
  for (std::size_t i = 0; i < kChoiceNames.size(); ++i) {
    if (kChoiceNames[i] == s) return static_cast<Choice>(i);
  }
  return std::nullopt;
}

ExclusionOutcome ApplyExclusions(std::span<const Participant> participants,
                                 std::span<const ComparisonTask> tasks,
                                 std::span<const ComparisonResponse> responses,
                                 const ExclusionPolicy& policy) {
  std::map<std::string, std::string> owner;  // task id -> participant id
  std::set<std::string> ids;
  for (const auto& p : participants) ids.insert(p.participant_id);
  for (const auto& t : tasks) {
    owner[t.task_id] = t.participant_id;
    ids.insert(t.participant_id);
  }

  std::map<std::string, std::set<std::string>> answered;
  std::map<std::string, int> failures;
  for (const auto& r : responses) {
    auto it = owner.find(r.task_id);
    if (it == owner.end()) continue;
    if (!answered[it->second].insert(r.task_id).second) continue;
    failures[it->second] += static_cast<int>(
        std::count(r.comprehension_results.begin(), r.comprehension_results.end(), false));
  }

  ExclusionOutcome out;
  for (const auto& id : ids) {
    const int failed = failures[id];
    const int count = static_cast<int>(answered[id].size());
    const bool comprehension = failed > policy.max_comprehension_failures;
    const bool incomplete = count < policy.required_responses;
    if (comprehension) {
      out.reports.push_back({id, ExclusionRule::kComprehensionFail,
                             std::to_string(failed) + " failed comprehension checks"});
    }
    if (incomplete) {
      out.reports.push_back({id, ExclusionRule::kIncomplete,
                             std::to_string(count) + " of " +
                                 std::to_string(policy.required_responses) + " responses"});
    }
    if (comprehension) {
      out.statuses[id] = ParticipantStatus::kExcludedComprehension;
    } else if (incomplete) {
      out.statuses[id] = ParticipantStatus::kExcludedIncomplete;
    } else {
      out.statuses[id] = ParticipantStatus::kCompleted;
      out.included.insert(id);
    }
  }
  return out;
}

ComparisonsByDimension ExtractComparisons(std::span<const ComparisonTask> tasks,
                                          std::span<const ComparisonResponse> responses,
                                          const std::set<std::string>& included) {
  std::map<std::string, const ComparisonTask*> by_id;
  for (const auto& t : tasks) by_id[t.task_id] = &t;

  std::vector<const ComparisonResponse*> ordered;
  for (const auto& r : responses) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->task_id < b->task_id; });

  ComparisonsByDimension out;
  std::set<std::string> seen;
  for (const auto* r : ordered) {
    auto it = by_id.find(r->task_id);
    if (it == by_id.end() || !included.contains(it->second->participant_id)) continue;
    if (!seen.insert(r->task_id).second) continue;
    const ComparisonTask& t = *it->second;
    for (const auto& [dim, choice] : r->choices) {
      if (choice == Choice::kSkipped) continue;
      const bool left_wins = choice == Choice::kLeft;
      out[dim].push_back({left_wins ? t.left_constitution : t.right_constitution,
                          left_wins ? t.right_constitution : t.left_constitution,
                          left_wins ? t.left_vignette : t.right_vignette,
                          left_wins ? t.right_vignette : t.left_vignette, t.task_id});
    }
  }
  return out;
}

}  // namespace pcc
