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

#ifndef PCC_RATING_SERVICE_H_
#define PCC_RATING_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcc/assignment.h"
#include "pcc/corpus.h"
#include "pcc/dialogue_engine.h"
#include "pcc/exclusions.h"
#include "pcc/rating_types.h"
#include "pcc/record_log.h"

namespace pcc {

enum class ServiceErrorCode { kNotFound, kDuplicate, kMalformed, kInactive };

class ServiceError : public std::runtime_error {
 public:
  ServiceError(ServiceErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ServiceErrorCode code() const { return code_; }

 private:
  ServiceErrorCode code_;
};

struct ServiceOptions {
  std::uint64_t seed = 0;
  AssignmentOptions assignment;
  std::function<std::string()> clock;  // defaults to NowIso8601
};

// Raw submission as received from a rater. Exactly one of
// `comprehension_answers` (option indices, graded here) or
// `comprehension_results` (pre-graded) must be provided.
struct ResponseSubmission {
  std::string task_id;
  std::map<std::string, std::string> choices;  // dimension id -> choice
  std::vector<int> comprehension_answers;
  std::vector<bool> comprehension_results;
};

struct EventCounts {
  std::size_t enrolled = 0;
  std::size_t assigned = 0;
  std::size_t responded = 0;
};

struct ExportResult {
  ExclusionOutcome exclusions;
  ComparisonsByDimension comparisons;
};

// Enrolment, assignment and response capture over one generated suite. All
// state is mirrored to an append-only record log, and an existing log is
// replayed on construction. Writes take an exclusive lock that also covers
// the duplicate check; reads share it.
class RatingService {
 public:
  RatingService(std::vector<DialogueRun> runs, Corpus corpus,
                const std::filesystem::path& log_path,
                ServiceOptions options = {});

  // Enrols a participant and assigns their two tasks.
  Participant Enroll();

  // Throws ServiceError(kNotFound) for an unknown participant.
  std::vector<ComparisonTask> TasksFor(std::string_view participant_id) const;

  // Validates, grades and stores a response. Throws ServiceError with
  // kNotFound, kDuplicate, kMalformed or kInactive.
  ComparisonResponse RecordResponse(const ResponseSubmission& submission);

  const DialogueRun* FindRun(std::string_view run_id) const;
  const Corpus& corpus() const { return corpus_; }
  std::span<const std::string> constitutions() const { return constitutions_; }

  RecordSet Snapshot() const;
  ExportResult Export() const;
  EventCounts Counts() const;

 private:
  void Apply(const RecordEvent& event);

  std::vector<DialogueRun> runs_;
  Corpus corpus_;
  std::vector<SuiteEntry> suite_;
  std::vector<std::string> constitutions_;
  ServiceOptions options_;

  mutable std::shared_mutex mu_;
  RecordLog log_;
  RecordSet state_;
  std::map<std::string, std::size_t, std::less<>> participant_index_;
  std::map<std::string, std::size_t, std::less<>> task_index_;
  std::map<std::string, std::size_t, std::less<>> responses_by_task_;
  EventCounts counts_;
};

}  // namespace pcc

#endif  // PCC_RATING_SERVICE_H_
