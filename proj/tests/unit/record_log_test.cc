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

#include "pcc/record_log.h"

#include "fixtures.h"
#include "gtest/gtest.h"
#include "pcc/text.h"

namespace pcc {
namespace {

std::vector<RecordEvent> SampleEvents() {
  ComparisonTask task;
  task.task_id = "P000000-t1";
  task.participant_id = "P000000";
  task.position = TaskPosition::kFirst;
  task.left_run_id = "vignette_1__doctor";
  task.right_run_id = "vignette_1__none";
  task.left_constitution = "doctor";
  task.right_constitution = "none";
  task.left_vignette = task.right_vignette = "vignette_1";
  task.left_right_order_seed = 0xFEDCBA9876543210ULL;
  ComparisonTask second = task;
  second.task_id = "P000000-t2";
  second.position = TaskPosition::kSecond;

  ComparisonResponse response;
  response.task_id = "P000000-t1";
  response.choices = {{Dimension::kHolistic, Choice::kRight},
                      {Dimension::kDecisionMaking, Choice::kSkipped}};
  response.comprehension_results = {true, false};
  response.submitted_at = "2026-01-01T00:00:00Z";
  return {EnrolledEvent{{"P000000", "2026-01-01T00:00:00Z", ParticipantStatus::kActive}},
          AssignedEvent{{task, second}}, RespondedEvent{response, "P000000"}};
}

TEST(RecordLogTest, EventsRoundTripThroughJson) {
  for (const auto& event : SampleEvents()) {
    const std::string line = EventToJsonLine(event);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    EXPECT_EQ(EventFromJsonLine(line), event);
  }
}

TEST(RecordLogTest, AppendThenReplay) {
  testing::TempDir dir;
  {
    RecordLog log(dir / "records.jsonl");
    for (const auto& e : SampleEvents()) log.Append(e);
  }
  const RecordSet set = ReplayRecords(dir / "records.jsonl");
  EXPECT_EQ(set.event_count, 3u);
  ASSERT_EQ(set.participants.size(), 1u);
  EXPECT_EQ(set.tasks.size(), 2u);
  ASSERT_EQ(set.responses.size(), 1u);
  EXPECT_EQ(set.responses[0].choices.at(Dimension::kHolistic), Choice::kRight);
  EXPECT_EQ(set.tasks[0].left_right_order_seed, 0xFEDCBA9876543210ULL);
}

TEST(RecordLogTest, MissingFileReplaysEmpty) {
  testing::TempDir dir;
  EXPECT_EQ(ReplayRecords(dir / "absent.jsonl").event_count, 0u);
}

TEST(RecordLogTest, CorruptLineReportsLineNumber) {
  testing::TempDir dir;
  const auto path = dir / "records.jsonl";
  WriteFile(path.string(), EventToJsonLine(SampleEvents()[0]) + "\n{\"type\": \"enrolled\"\n");
  try {
    ReplayRecords(path);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("records.jsonl:2:"), std::string::npos) << e.what();
  }
}

TEST(RecordLogTest, UnknownTypeIsRejected) {
  EXPECT_THROW(EventFromJsonLine(R"({"type":"deleted"})"), std::runtime_error);
}

}  // namespace
}  // namespace pcc
