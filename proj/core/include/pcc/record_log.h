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

#ifndef PCC_RECORD_LOG_H_
#define PCC_RECORD_LOG_H_

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "pcc/rating_types.h"

namespace pcc {

struct EnrolledEvent {
  Participant participant;

  bool operator==(const EnrolledEvent&) const = default;
};

struct AssignedEvent {
  std::vector<ComparisonTask> tasks;

  bool operator==(const AssignedEvent&) const = default;
};

struct RespondedEvent {
  ComparisonResponse response;
  std::string participant_id;

  bool operator==(const RespondedEvent&) const = default;
};

using RecordEvent = std::variant<EnrolledEvent, AssignedEvent, RespondedEvent>;

// One JSON object per line, tagged by "type" (enrolled, assigned, responded).
std::string EventToJsonLine(const RecordEvent& event);
RecordEvent EventFromJsonLine(std::string_view line);

// Everything a log replay yields, in arrival order.
struct RecordSet {
  std::vector<Participant> participants;
  std::vector<ComparisonTask> tasks;
  std::vector<ComparisonResponse> responses;
  std::size_t event_count = 0;
};

// Throws std::runtime_error with the line number on a corrupt line.
RecordSet ReplayRecords(const std::filesystem::path& path);
RecordSet ReplayEvents(const std::vector<RecordEvent>& events);

// Append-only writer. Each Append writes and flushes one complete line.
class RecordLog {
 public:
  explicit RecordLog(const std::filesystem::path& path);

  void Append(const RecordEvent& event);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace pcc

#endif  // PCC_RECORD_LOG_H_
