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

#include "pcc/rating_service.h"

#include <cstdio>
#include <mutex>
#include <set>

#include "pcc/rng.h"
#include "pcc/suite_io.h"

namespace pcc {
namespace {

std::string ParticipantId(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "P%06zu", n);
  return buf;
}

}  // namespace

RatingService::RatingService(std::vector<DialogueRun> runs, Corpus corpus,
                             const std::filesystem::path& log_path, ServiceOptions options)
    : runs_(std::move(runs)),
      corpus_(std::move(corpus)),
      options_(std::move(options)),
      log_(log_path) {
  if (!options_.clock) options_.clock = NowIso8601;
  std::set<std::string> constitutions;
  for (const auto& run : runs_) {
    if (run.validation != Validation::kValid) {
      throw std::invalid_argument("run " + run.run_id + " did not pass validation");
    }
    suite_.push_back({run.run_id, run.vignette_id, run.constitution_id});
    constitutions.insert(run.constitution_id);
  }
  constitutions_.assign(constitutions.begin(), constitutions.end());

  const RecordSet replayed = ReplayRecords(log_path);
  for (const auto& p : replayed.participants) Apply(EnrolledEvent{p});
  std::map<std::string, std::vector<ComparisonTask>> tasks_by_participant;
  for (const auto& t : replayed.tasks) tasks_by_participant[t.participant_id].push_back(t);
  for (auto& [pid, tasks] : tasks_by_participant) Apply(AssignedEvent{std::move(tasks)});
  for (const auto& r : replayed.responses) {
    auto it = task_index_.find(r.task_id);
    Apply(RespondedEvent{r, it == task_index_.end() ? "" : state_.tasks[it->second].participant_id});
  }
  state_.event_count = replayed.event_count;
}

void RatingService::Apply(const RecordEvent& event) {
  if (const auto* e = std::get_if<EnrolledEvent>(&event)) {
    participant_index_[e->participant.participant_id] = state_.participants.size();
    state_.participants.push_back(e->participant);
    ++counts_.enrolled;
  } else if (const auto* a = std::get_if<AssignedEvent>(&event)) {
    for (const auto& t : a->tasks) {
      task_index_[t.task_id] = state_.tasks.size();
      state_.tasks.push_back(t);
    }
    ++counts_.assigned;
  } else {
    const auto& r = std::get<RespondedEvent>(event);
    responses_by_task_[r.response.task_id] = state_.responses.size();
    state_.responses.push_back(r.response);
    ++counts_.responded;
    auto p = participant_index_.find(r.participant_id);
    if (p != participant_index_.end()) {
      bool all = true;
      for (const auto& t : state_.tasks) {
        if (t.participant_id == r.participant_id) {
          all = all && responses_by_task_.contains(t.task_id);
        }
      }
      if (all) state_.participants[p->second].status = ParticipantStatus::kCompleted;
    }
  }
  ++state_.event_count;
}

Participant RatingService::Enroll() {
  std::unique_lock lock(mu_);
  Participant p{ParticipantId(state_.participants.size() + 1), options_.clock(),
                ParticipantStatus::kActive};
  auto [first, second] = AssignTasks(p.participant_id, suite_, constitutions_,
                                     MixSeed(options_.seed, p.participant_id),
                                     options_.assignment);
  const RecordEvent enrolled = EnrolledEvent{p};
  const RecordEvent assigned = AssignedEvent{{std::move(first), std::move(second)}};
  log_.Append(enrolled);
  Apply(enrolled);
  log_.Append(assigned);
  Apply(assigned);
  return p;
}

std::vector<ComparisonTask> RatingService::TasksFor(std::string_view participant_id) const {
  std::shared_lock lock(mu_);
  if (!participant_index_.contains(participant_id)) {
    throw ServiceError(ServiceErrorCode::kNotFound,
                       "unknown participant " + std::string(participant_id));
  }
  std::vector<ComparisonTask> out;
  for (const auto& t : state_.tasks) {
    if (t.participant_id == participant_id) out.push_back(t);
  }
  return out;
}

ComparisonResponse RatingService::RecordResponse(const ResponseSubmission& submission) {
  auto malformed = [](const std::string& msg) {
    return ServiceError(ServiceErrorCode::kMalformed, msg);
  };
  if (submission.task_id.empty()) throw malformed("missing task_id");

  std::unique_lock lock(mu_);
  auto task_it = task_index_.find(submission.task_id);
  if (task_it == task_index_.end()) {
    throw ServiceError(ServiceErrorCode::kNotFound, "unknown task " + submission.task_id);
  }
  const ComparisonTask& task = state_.tasks[task_it->second];
  if (responses_by_task_.contains(submission.task_id)) {
    throw ServiceError(ServiceErrorCode::kDuplicate,
                       "task " + submission.task_id + " already has a response");
  }
  auto p = participant_index_.find(task.participant_id);
  if (p == participant_index_.end() ||
      state_.participants[p->second].status != ParticipantStatus::kActive) {
    throw ServiceError(ServiceErrorCode::kInactive,
                       "participant " + task.participant_id + " is not active");
  }

  ComparisonResponse response;
  response.task_id = submission.task_id;
  for (const auto& [key, value] : submission.choices) {
    const auto dim = ParseDimension(key);
    if (!dim) throw malformed("unknown dimension \"" + key + "\"");
    const auto choice = ParseChoice(value);
    if (!choice) throw malformed("choice for " + key + " must be left, right or skipped");
    response.choices[*dim] = *choice;
  }
  if (response.choices.size() != kAllDimensions.size()) {
    throw malformed("a choice (possibly \"skipped\") is required for all " +
                    std::to_string(kAllDimensions.size()) + " dimensions");
  }

  const bool has_answers = !submission.comprehension_answers.empty();
  const bool has_results = !submission.comprehension_results.empty();
  if (has_answers == has_results) {
    throw malformed("provide exactly one of comprehension_answers or comprehension_results");
  }
  if (has_results) {
    if (submission.comprehension_results.size() != 2) {
      throw malformed("comprehension_results needs one entry per dialogue");
    }
    response.comprehension_results = submission.comprehension_results;
  } else {
    if (submission.comprehension_answers.size() != 2) {
      throw malformed("comprehension_answers needs one entry per dialogue");
    }
    const std::string* run_ids[2] = {&task.left_run_id, &task.right_run_id};
    for (int k = 0; k < 2; ++k) {
      const ComprehensionQuestion* q = corpus_.FindQuestion(*run_ids[k]);
      if (q == nullptr) throw malformed("no comprehension question for " + *run_ids[k]);
      const int answer = submission.comprehension_answers[k];
      if (answer < 0 || answer >= static_cast<int>(q->options.size())) {
        throw malformed("comprehension answer " + std::to_string(answer) + " out of range");
      }
      response.comprehension_results.push_back(answer == q->correct_index);
    }
  }
  response.submitted_at = options_.clock();

  const RecordEvent event = RespondedEvent{response, task.participant_id};
  log_.Append(event);
  Apply(event);
  return response;
}

const DialogueRun* RatingService::FindRun(std::string_view run_id) const {
  for (const auto& run : runs_) {
    if (run.run_id == run_id) return &run;
  }
  return nullptr;
}

RecordSet RatingService::Snapshot() const {
  std::shared_lock lock(mu_);
  return state_;
}

ExportResult RatingService::Export() const {
  std::shared_lock lock(mu_);
  ExportResult out;
  out.exclusions = ApplyExclusions(state_.participants, state_.tasks, state_.responses);
  out.comparisons = ExtractComparisons(state_.tasks, state_.responses, out.exclusions.included);
  return out;
}

EventCounts RatingService::Counts() const {
  std::shared_lock lock(mu_);
  return counts_;
}

}  // namespace pcc
