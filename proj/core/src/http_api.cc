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

#include "httplib.h"
#include "json.hpp"
#include "pcc/logging.h"

namespace pcc {
namespace {

using Json = nlohmann::ordered_json;

void Reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, int status, const std::string& message) {
  Reply(res, status, {{"error", message}});
}

int HttpStatus(ServiceErrorCode code) {
  switch (code) {
    case ServiceErrorCode::kNotFound:
      return 404;
    case ServiceErrorCode::kDuplicate:
    case ServiceErrorCode::kInactive:
      return 409;
    case ServiceErrorCode::kMalformed:
      return 422;
  }
  return 500;
}

Json DialogueJson(const RatingService& service, const std::string& run_id) {
  Json turns = Json::array();
  const DialogueRun* run = service.FindRun(run_id);
  if (run != nullptr) {
    for (const auto& t : run->conversation_2.turns) {
      turns.push_back({{"speaker", SpeakerName(t.speaker)}, {"text", t.text}});
    }
  }
  Json dialogue = {{"run_id", run_id}, {"transcript", std::move(turns)}};
  if (const auto* q = service.corpus().FindQuestion(run_id)) {
    dialogue["comprehension"] = {{"prompt", q->prompt}, {"options", q->options}};
  }
  return dialogue;
}

ResponseSubmission ParseSubmission(const std::string& body) {
  ResponseSubmission s;
  const Json j = Json::parse(body);
  if (!j.is_object()) throw ServiceError(ServiceErrorCode::kMalformed, "body must be an object");
  s.task_id = j.value("task_id", "");
  if (!j.contains("choices") || !j["choices"].is_object()) {
    throw ServiceError(ServiceErrorCode::kMalformed, "missing choices object");
  }
  for (const auto& [key, value] : j["choices"].items()) {
    if (!value.is_string()) {
      throw ServiceError(ServiceErrorCode::kMalformed, "choice for " + key + " must be a string");
    }
    s.choices[key] = value.get<std::string>();
  }
  if (j.contains("comprehension_answers")) {
    s.comprehension_answers = j["comprehension_answers"].get<std::vector<int>>();
  }
  if (j.contains("comprehension_results")) {
    s.comprehension_results = j["comprehension_results"].get<std::vector<bool>>();
  }
  return s;
}

Json ExportJson(const ExportResult& result) {
  Json reports = Json::array();
  for (const auto& r : result.exclusions.reports) {
    reports.push_back(
        {{"participant_id", r.participant_id}, {"rule", RuleName(r.rule)}, {"detail", r.detail}});
  }
  Json statuses = Json::object();
  for (const auto& [id, status] : result.exclusions.statuses) statuses[id] = StatusName(status);
  Json comparisons = Json::object();
  for (const auto& [dim, outcomes] : result.comparisons) {
    Json list = Json::array();
    for (const auto& o : outcomes) {
      list.push_back({{"winner", o.winner},
                      {"loser", o.loser},
                      {"winner_vignette", o.winner_vignette},
                      {"loser_vignette", o.loser_vignette},
                      {"task_id", o.task_id}});
    }
    comparisons[std::string(DimensionId(dim))] = std::move(list);
  }
  return {{"included", result.exclusions.included},
          {"exclusions", std::move(reports)},
          {"statuses", std::move(statuses)},
          {"comparisons", std::move(comparisons)}};
}

}  // namespace

struct RatingServer::Impl {
  RatingService& service;
  std::string admin_token;
  httplib::Server server;

  Impl(RatingService& s, std::string token) : service(s), admin_token(std::move(token)) {
    server.Post("/participants", [this](const httplib::Request&, httplib::Response& res) {
      const Participant p = service.Enroll();
      Logger()->info("enrolled {}", p.participant_id);
      Reply(res, 200, {{"participant_id", p.participant_id}});
    });

    server.Get(R"(/participants/([^/]+)/tasks)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 Json tasks = Json::array();
                 for (const auto& t : service.TasksFor(id)) {
                   tasks.push_back({{"task_id", t.task_id},
                                    {"position", t.position == TaskPosition::kFirst ? 1 : 2},
                                    {"left", DialogueJson(service, t.left_run_id)},
                                    {"right", DialogueJson(service, t.right_run_id)}});
                 }
                 Json dims = Json::array();
                 for (const auto& d : service.corpus().dimensions) {
                   dims.push_back({{"id", DimensionId(d.id)},
                                   {"label", d.label},
                                   {"question", d.question_text}});
                 }
                 Reply(res, 200,
                       {{"participant_id", id}, {"tasks", std::move(tasks)},
                        {"dimensions", std::move(dims)}});
               });

    server.Post("/responses", [this](const httplib::Request& req, httplib::Response& res) {
      ResponseSubmission submission;
      try {
        submission = ParseSubmission(req.body);
      } catch (const Json::exception& e) {
        ReplyError(res, 422, std::string("malformed body: ") + e.what());
        return;
      }
      const ComparisonResponse r = service.RecordResponse(submission);
      Reply(res, 200, {{"task_id", r.task_id}, {"status", "recorded"}});
    });

    server.Get("/admin/export", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string expected = "Bearer " + admin_token;
      if (admin_token.empty() || req.get_header_value("Authorization") != expected) {
        ReplyError(res, 401, "admin token required");
        return;
      }
      Reply(res, 200, ExportJson(service.Export()));
    });

    server.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          try {
            std::rethrow_exception(ep);
          } catch (const ServiceError& e) {
            ReplyError(res, HttpStatus(e.code()), e.what());
          } catch (const std::exception& e) {
            Logger()->error("request failed: {}", e.what());
            ReplyError(res, 500, "internal error");
          }
        });
  }
};

RatingServer::RatingServer(RatingService& service, std::string admin_token)
    : impl_(std::make_unique<Impl>(service, std::move(admin_token))) {}

RatingServer::~RatingServer() { Stop(); }

bool RatingServer::Bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

int RatingServer::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool RatingServer::Listen() { return impl_->server.listen_after_bind(); }

void RatingServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

bool RatingServer::IsRunning() const { return impl_->server.is_running(); }

}  // namespace pcc
