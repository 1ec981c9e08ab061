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

#include "pcc/http_api.h"

#include <thread>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"
#include "pcc/rating_service.h"

namespace pcc {
namespace {

using Json = nlohmann::json;

class HttpApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    service_ = std::make_unique<RatingService>(testing::MinimalSuite(),
                                               LoadCorpus(testing::ShippedCorpusDir()),
                                               dir_ / "records.jsonl");
    server_ = std::make_unique<RatingServer>(*service_, "s3cret");
    port_ = server_->BindToAnyPort("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->Listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    server_->Stop();
    thread_.join();
  }

  Json Choices() {
    Json choices = Json::object();
    for (Dimension d : kAllDimensions) choices[std::string(DimensionId(d))] = "left";
    return choices;
  }

  testing::TempDir dir_;
  std::unique_ptr<RatingService> service_;
  std::unique_ptr<RatingServer> server_;
  int port_ = -1;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(HttpApiTest, RoundTrip) {
  auto enrolled = client_->Post("/participants");
  ASSERT_TRUE(enrolled);
  ASSERT_EQ(enrolled->status, 200);
  const std::string pid = Json::parse(enrolled->body).at("participant_id");

  auto tasks = client_->Get("/participants/" + pid + "/tasks");
  ASSERT_TRUE(tasks);
  ASSERT_EQ(tasks->status, 200);
  const Json body = Json::parse(tasks->body);
  ASSERT_EQ(body.at("tasks").size(), 2u);
  EXPECT_EQ(body.at("dimensions").size(), 7u);
  const Json& task = body.at("tasks")[0];
  EXPECT_EQ(task.at("position"), 1);
  EXPECT_FALSE(task.at("left").at("transcript").empty());
  EXPECT_EQ(task.at("left").at("transcript")[0].at("speaker"), "doctor");
  EXPECT_EQ(task.at("left").at("comprehension").at("options").size(), 4u);
  EXPECT_FALSE(task.at("left").at("comprehension").contains("correct_index"));

  const Json submission = {{"task_id", task.at("task_id")},
                           {"choices", Choices()},
                           {"comprehension_results", {true, true}}};
  auto posted = client_->Post("/responses", submission.dump(), "application/json");
  ASSERT_TRUE(posted);
  EXPECT_EQ(posted->status, 200);
  EXPECT_EQ(Json::parse(posted->body).at("status"), "recorded");

  auto again = client_->Post("/responses", submission.dump(), "application/json");
  ASSERT_TRUE(again);
  EXPECT_EQ(again->status, 409);
  EXPECT_TRUE(Json::parse(again->body).contains("error"));
}

TEST_F(HttpApiTest, ErrorStatuses) {
  auto unknown = client_->Get("/participants/P123456/tasks");
  ASSERT_TRUE(unknown);
  EXPECT_EQ(unknown->status, 404);

  const Json unknown_task = {{"task_id", "nope"},
                             {"choices", Choices()},
                             {"comprehension_results", {true, true}}};
  auto missing = client_->Post("/responses", unknown_task.dump(), "application/json");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  auto garbage = client_->Post("/responses", "{not json", "application/json");
  ASSERT_TRUE(garbage);
  EXPECT_EQ(garbage->status, 422);

  client_->Post("/participants");
  Json incomplete = {{"task_id", "P000001-t1"},
                     {"choices", {{"holistic", "left"}}},
                     {"comprehension_results", {true, true}}};
  auto malformed = client_->Post("/responses", incomplete.dump(), "application/json");
  ASSERT_TRUE(malformed);
  EXPECT_EQ(malformed->status, 422);
}

TEST_F(HttpApiTest, ExportNeedsToken) {
  auto anonymous = client_->Get("/admin/export");
  ASSERT_TRUE(anonymous);
  EXPECT_EQ(anonymous->status, 401);

  auto wrong = client_->Get("/admin/export", {{"Authorization", "Bearer guess"}});
  ASSERT_TRUE(wrong);
  EXPECT_EQ(wrong->status, 401);

  auto ok = client_->Get("/admin/export", {{"Authorization", "Bearer s3cret"}});
  ASSERT_TRUE(ok);
  ASSERT_EQ(ok->status, 200);
  const Json body = Json::parse(ok->body);
  EXPECT_TRUE(body.contains("included"));
  EXPECT_TRUE(body.contains("comparisons"));
}

}  // namespace
}  // namespace pcc
