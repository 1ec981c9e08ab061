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

#include <stdexcept>

#include "json.hpp"
#include "pcc/text.h"

namespace pcc {
namespace {

using Json = nlohmann::ordered_json;

ParticipantStatus ParseStatus(const std::string& s) {
  for (auto status : {ParticipantStatus::kActive, ParticipantStatus::kCompleted,
                      ParticipantStatus::kExcludedComprehension,
                      ParticipantStatus::kExcludedIncomplete}) {
    if (StatusName(status) == s) return status;
  }
  throw std::runtime_error("unknown participant status \"" + s + "\"");
}

Json TaskJson(const ComparisonTask& t) {
  return {{"task_id", t.task_id},
          {"participant_id", t.participant_id},
          {"position", t.position == TaskPosition::kFirst ? "first" : "second"},
          {"left_run_id", t.left_run_id},
          {"right_run_id", t.right_run_id},
          {"left_constitution", t.left_constitution},
          {"right_constitution", t.right_constitution},
          {"left_vignette", t.left_vignette},
          {"right_vignette", t.right_vignette},
          {"left_right_order_seed", t.left_right_order_seed}};
}

ComparisonTask TaskFrom(const Json& j) {
  ComparisonTask t;
  t.task_id = j.at("task_id").get<std::string>();
  t.participant_id = j.at("participant_id").get<std::string>();
  const auto position = j.at("position").get<std::string>();
  if (position != "first" && position != "second") {
    throw std::runtime_error("unknown task position \"" + position + "\"");
  }
  t.position = position == "first" ? TaskPosition::kFirst : TaskPosition::kSecond;
  t.left_run_id = j.at("left_run_id").get<std::string>();
  t.right_run_id = j.at("right_run_id").get<std::string>();
  t.left_constitution = j.at("left_constitution").get<std::string>();
  t.right_constitution = j.at("right_constitution").get<std::string>();
  t.left_vignette = j.at("left_vignette").get<std::string>();
  t.right_vignette = j.at("right_vignette").get<std::string>();
  t.left_right_order_seed = j.at("left_right_order_seed").get<std::uint64_t>();
  return t;
}

struct ToJson {
  Json operator()(const EnrolledEvent& e) const {
    return {{"type", "enrolled"},
            {"participant_id", e.participant.participant_id},
            {"enrolled_at", e.participant.enrolled_at},
            {"status", StatusName(e.participant.status)}};
  }
  Json operator()(const AssignedEvent& e) const {
    Json tasks = Json::array();
    for (const auto& t : e.tasks) tasks.push_back(TaskJson(t));
    return {{"type", "assigned"}, {"tasks", std::move(tasks)}};
  }
  Json operator()(const RespondedEvent& e) const {
    Json choices = Json::object();
    for (const auto& [dim, choice] : e.response.choices) {
      choices[std::string(DimensionId(dim))] = ChoiceName(choice);
    }
    return {{"type", "responded"},
            {"participant_id", e.participant_id},
            {"task_id", e.response.task_id},
            {"choices", std::move(choices)},
            {"comprehension_results", e.response.comprehension_results},
            {"submitted_at", e.response.submitted_at}};
  }
};

}  // namespace

std::string EventToJsonLine(const RecordEvent& event) {
  return std::visit(ToJson{}, event).dump();
}

RecordEvent EventFromJsonLine(std::string_view line) {
  const Json j = Json::parse(line);
  const std::string type = j.at("type").get<std::string>();
  if (type == "enrolled") {
    return EnrolledEvent{{j.at("participant_id").get<std::string>(),
                          j.at("enrolled_at").get<std::string>(),
                          ParseStatus(j.at("status").get<std::string>())}};
  }
  if (type == "assigned") {
    AssignedEvent e;
    for (const auto& t : j.at("tasks")) e.tasks.push_back(TaskFrom(t));
    return e;
  }
  if (type == "responded") {
    RespondedEvent e;
    e.participant_id = j.at("participant_id").get<std::string>();
    e.response.task_id = j.at("task_id").get<std::string>();
    for (const auto& [key, value] : j.at("choices").items()) {
      const auto dim = ParseDimension(key);
      const auto choice = ParseChoice(value.get<std::string>());
      if (!dim || !choice) throw std::runtime_error("bad choice " + key);
      e.response.choices[*dim] = *choice;
    }
    e.response.comprehension_results =
        j.at("comprehension_results").get<std::vector<bool>>();
    e.response.submitted_at = j.at("submitted_at").get<std::string>();
    return e;
  }
  throw std::runtime_error("unknown event type \"" + type + "\"");
}

RecordSet ReplayEvents(const std::vector<RecordEvent>& events) {
  RecordSet set;
  for (const auto& event : events) {
    if (const auto* e = std::get_if<EnrolledEvent>(&event)) {
      set.participants.push_back(e->participant);
    } else if (const auto* a = std::get_if<AssignedEvent>(&event)) {
      set.tasks.insert(set.tasks.end(), a->tasks.begin(), a->tasks.end());
    } else {
      set.responses.push_back(std::get<RespondedEvent>(event).response);
    }
  }
  set.event_count = events.size();
  return set;
}

RecordSet ReplayRecords(const std::filesystem::path& path) {
  std::vector<RecordEvent> events;
  if (!std::filesystem::exists(path)) return ReplayEvents(events);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (Trim(line).empty()) continue;
    try {
      events.push_back(EventFromJsonLine(line));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return ReplayEvents(events);
}

RecordLog::RecordLog(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::app);
  if (!out_) throw std::runtime_error("cannot open record log " + path.string());
}

void RecordLog::Append(const RecordEvent& event) {
  const std::string line = EventToJsonLine(event) + "\n";
  std::lock_guard lock(mu_);
  out_ << line;
  out_.flush();
  if (!out_) throw std::runtime_error("write to " + path_.string() + " failed");
}

}  // namespace pcc
