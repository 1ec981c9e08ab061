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

#include "fixtures.h"
#include "gtest/gtest.h"

namespace pcc {
namespace {

std::map<std::string, std::string> Choices(const std::string& value = "left") {
  std::map<std::string, std::string> choices;
  for (Dimension d : kAllDimensions) choices[std::string(DimensionId(d))] = value;
  return choices;
}

class RatingServiceTest : public ::testing::Test {
 protected:
  RatingService Make(ServiceOptions options = {}) {
    options.clock = [] { return std::string("2026-01-01T00:00:00Z"); };
    return RatingService(runs_, corpus_, dir_ / "records.jsonl", options);
  }

  testing::TempDir dir_;
  Corpus corpus_ = LoadCorpus(testing::ShippedCorpusDir());
  std::vector<DialogueRun> runs_ = testing::MinimalSuite();
};

TEST_F(RatingServiceTest, EnrollAssignsTwoTasks) {
  RatingService service = Make();
  const Participant p = service.Enroll();
  EXPECT_EQ(p.participant_id, "P000001");
  EXPECT_EQ(service.Enroll().participant_id, "P000002");
  const auto tasks = service.TasksFor(p.participant_id);
  ASSERT_EQ(tasks.size(), 2u);
  EXPECT_NE(service.FindRun(tasks[0].left_run_id), nullptr);
  EXPECT_EQ(service.Counts().enrolled, 2u);
  EXPECT_EQ(service.Counts().assigned, 2u);
}

TEST_F(RatingServiceTest, UnknownParticipant) {
  RatingService service = Make();
  try {
    service.TasksFor("P999999");
    FAIL();
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.code(), ServiceErrorCode::kNotFound);
  }
}

TEST_F(RatingServiceTest, SkippedDimensionsAreStored) {
  RatingService service = Make();
  const auto tasks = service.TasksFor(service.Enroll().participant_id);
  auto choices = Choices();
  choices["decision_making"] = "skipped";
  choices["holistic"] = "skipped";
  const auto r = service.RecordResponse({tasks[0].task_id, choices, {}, {true, true}});
  EXPECT_EQ(r.choices.at(Dimension::kHolistic), Choice::kSkipped);
  EXPECT_EQ(r.choices.at(Dimension::kDecisionMaking), Choice::kSkipped);
  EXPECT_EQ(r.choices.size(), 7u);
  EXPECT_EQ(r.submitted_at, "2026-01-01T00:00:00Z");
}

TEST_F(RatingServiceTest, DuplicateIsRejected) {
  RatingService service = Make();
  const auto tasks = service.TasksFor(service.Enroll().participant_id);
  service.RecordResponse({tasks[0].task_id, Choices(), {}, {true, true}});
  try {
    service.RecordResponse({tasks[0].task_id, Choices("right"), {}, {true, true}});
    FAIL();
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.code(), ServiceErrorCode::kDuplicate);
  }
  EXPECT_EQ(service.Counts().responded, 1u);
}

TEST_F(RatingServiceTest, MalformedSubmissions) {
  RatingService service = Make();
  const auto tasks = service.TasksFor(service.Enroll().participant_id);
  auto expect_malformed = [&](const ResponseSubmission& s) {
    try {
      service.RecordResponse(s);
      ADD_FAILURE() << "accepted";
    } catch (const ServiceError& e) {
      EXPECT_EQ(e.code(), ServiceErrorCode::kMalformed) << e.what();
    }
  };
  auto missing = Choices();
  missing.erase("holistic");
  expect_malformed({tasks[0].task_id, missing, {}, {true, true}});
  auto bad = Choices();
  bad["holistic"] = "both";
  expect_malformed({tasks[0].task_id, bad, {}, {true, true}});
  auto extra = Choices();
  extra["warmth"] = "left";
  expect_malformed({tasks[0].task_id, extra, {}, {true, true}});
  expect_malformed({tasks[0].task_id, Choices(), {}, {}});
  expect_malformed({tasks[0].task_id, Choices(), {1, 1}, {true, true}});
  expect_malformed({tasks[0].task_id, Choices(), {}, {true}});
  expect_malformed({tasks[0].task_id, Choices(), {9, 0}, {}});
  expect_malformed({"", Choices(), {}, {true, true}});
  EXPECT_EQ(service.Counts().responded, 0u);
}

TEST_F(RatingServiceTest, AnswersAreGraded) {
  RatingService service = Make();
  const auto tasks = service.TasksFor(service.Enroll().participant_id);
  const auto* left = corpus_.FindQuestion(tasks[0].left_run_id);
  const auto* right = corpus_.FindQuestion(tasks[0].right_run_id);
  ASSERT_NE(left, nullptr);
  ASSERT_NE(right, nullptr);
  const int wrong = right->correct_index == 0 ? 1 : 0;
  const auto r =
      service.RecordResponse({tasks[0].task_id, Choices(), {left->correct_index, wrong}, {}});
  EXPECT_EQ(r.comprehension_results, (std::vector<bool>{true, false}));
}

TEST_F(RatingServiceTest, CompletionAndExport) {
  RatingService service = Make();
  const auto tasks = service.TasksFor(service.Enroll().participant_id);
  service.RecordResponse({tasks[0].task_id, Choices(), {}, {true, true}});
  service.RecordResponse({tasks[1].task_id, Choices("right"), {}, {true, false}});
  EXPECT_EQ(service.Snapshot().participants[0].status, ParticipantStatus::kCompleted);
  try {
    service.RecordResponse({"P000001-t3", Choices(), {}, {true, true}});
    FAIL();
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.code(), ServiceErrorCode::kNotFound);
  }
  const ExportResult out = service.Export();
  EXPECT_EQ(out.exclusions.included, std::set<std::string>{"P000001"});
  EXPECT_EQ(out.comparisons.at(Dimension::kHolistic).size(), 2u);
  EXPECT_EQ(out.comparisons.at(Dimension::kHolistic)[0].winner, tasks[0].left_constitution);
  EXPECT_EQ(out.comparisons.at(Dimension::kHolistic)[1].winner, tasks[1].right_constitution);
}

TEST_F(RatingServiceTest, StateSurvivesRestart) {
  std::vector<ComparisonTask> tasks;
  {
    RatingService service = Make();
    tasks = service.TasksFor(service.Enroll().participant_id);
    service.RecordResponse({tasks[0].task_id, Choices(), {}, {true, true}});
  }
  RatingService reopened = Make();
  EXPECT_EQ(reopened.TasksFor("P000001"), tasks);
  EXPECT_EQ(reopened.Counts().responded, 1u);
  EXPECT_EQ(reopened.Enroll().participant_id, "P000002");
  EXPECT_THROW(reopened.RecordResponse({tasks[0].task_id, Choices(), {}, {true, true}}),
               ServiceError);
}

TEST_F(RatingServiceTest, AssignmentDependsOnSeed) {
  ServiceOptions a;
  a.seed = 1;
  RatingService first = Make(a);
  const auto tasks_a = first.TasksFor(first.Enroll().participant_id);
  testing::TempDir other;
  ServiceOptions b = a;
  RatingService second(runs_, corpus_, other / "records.jsonl", b);
  EXPECT_EQ(second.TasksFor(second.Enroll().participant_id), tasks_a);
}

TEST_F(RatingServiceTest, InvalidRunsAreRefused) {
  runs_[0].validation = Validation::kPatientViolation;
  EXPECT_THROW(Make(), std::invalid_argument);
}

}  // namespace
}  // namespace pcc
