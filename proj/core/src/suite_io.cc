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

#include "pcc/suite_io.h"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "pcc/digest.h"
#include "pcc/text.h"

namespace pcc {
namespace {

using Json = nlohmann::ordered_json;

template <typename Enum, std::size_t N>
Enum EnumFrom(const Json& j, const std::array<std::string_view, N>& names,
              std::string_view field) {
  const std::string s = j.get<std::string>();
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<Enum>(i);
  }
  throw std::runtime_error("unknown " + std::string(field) + " \"" + s + "\"");
}

constexpr std::array<std::string_view, 2> kSpeakers = {"doctor", "patient"};
constexpr std::array<std::string_view, 2> kRounds = {"pre_feedback", "post_feedback"};
constexpr std::array<std::string_view, 2> kTerminations = {"moderator_stop", "max_turns_cap"};
constexpr std::array<std::string_view, 3> kValidations = {"pending", "valid",
                                                          "patient_violation"};
constexpr std::array<std::string_view, 2> kAuthors = {"user", "assistant"};

Json ConversationJson(const Conversation& c) {
  Json turns = Json::array();
  for (const auto& t : c.turns) {
    turns.push_back({{"index", t.index}, {"speaker", SpeakerName(t.speaker)}, {"text", t.text}});
  }
  return {{"vignette_id", c.vignette_id},
          {"constitution_id", c.constitution_id},
          {"round", RoundName(c.round)},
          {"termination", TerminationName(c.termination)},
          {"turns", std::move(turns)}};
}

Conversation ConversationFrom(const Json& j) {
  Conversation c;
  c.vignette_id = j.at("vignette_id").get<std::string>();
  c.constitution_id = j.at("constitution_id").get<std::string>();
  c.round = EnumFrom<Round>(j.at("round"), kRounds, "round");
  c.termination = EnumFrom<Termination>(j.at("termination"), kTerminations, "termination");
  for (const auto& t : j.at("turns")) {
    c.turns.push_back({EnumFrom<Speaker>(t.at("speaker"), kSpeakers, "speaker"),
                       t.at("text").get<std::string>(), t.at("index").get<int>()});
  }
  return c;
}

Json ContextJson(const PromptContext& ctx) {
  Json messages = Json::array();
  for (const auto& m : ctx.messages) {
    messages.push_back({{"author", kAuthors[static_cast<int>(m.author)]}, {"text", m.text}});
  }
  return {{"system_prompt", ctx.system_prompt}, {"messages", std::move(messages)}};
}

PromptContext ContextFrom(const Json& j) {
  PromptContext ctx;
  ctx.system_prompt = j.at("system_prompt").get<std::string>();
  for (const auto& m : j.at("messages")) {
    ctx.messages.push_back({EnumFrom<Author>(m.at("author"), kAuthors, "author"),
                            m.at("text").get<std::string>()});
  }
  return ctx;
}

Json EngineConfigJson(const EngineConfig& c) {
  return {{"critic_rounds", c.critic_rounds},
          {"max_turns_per_conversation", c.max_turns_per_conversation},
          {"max_regenerations", c.max_regenerations},
          {"reuse_first_patient_turn", c.reuse_first_patient_turn},
          {"parallelism", c.parallelism}};
}

EngineConfig EngineConfigFrom(const Json& j) {
  EngineConfig c;
  c.critic_rounds = j.at("critic_rounds").get<int>();
  c.max_turns_per_conversation = j.at("max_turns_per_conversation").get<int>();
  c.max_regenerations = j.at("max_regenerations").get<int>();
  c.reuse_first_patient_turn = j.at("reuse_first_patient_turn").get<bool>();
  c.parallelism = j.at("parallelism").get<int>();
  return c;
}

Json Parse(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string RunToJson(const DialogueRun& run) {
  Json intermediate = Json::array();
  for (const auto& c : run.intermediate_conversations) intermediate.push_back(ConversationJson(c));
  const Json j = {{"run_id", run.run_id},
                  {"vignette_id", run.vignette_id},
                  {"constitution_id", run.constitution_id},
                  {"conversation_1", ConversationJson(run.conversation_1)},
                  {"critic_feedback", run.critic_feedback},
                  {"conversation_2", ConversationJson(run.conversation_2)},
                  {"feedback_history", run.feedback_history},
                  {"intermediate_conversations", std::move(intermediate)},
                  {"doctor_context", ContextJson(run.doctor_context)},
                  {"validation", ValidationName(run.validation)},
                  {"validation_reason", run.validation_reason},
                  {"regeneration_count", run.regeneration_count},
                  {"critic_calls", run.critic_calls}};
  return j.dump(2) + "\n";
}

DialogueRun RunFromJson(std::string_view json) {
  const Json j = Parse(json, "run file");
  try {
    DialogueRun run;
    run.run_id = j.at("run_id").get<std::string>();
    run.vignette_id = j.at("vignette_id").get<std::string>();
    run.constitution_id = j.at("constitution_id").get<std::string>();
    run.conversation_1 = ConversationFrom(j.at("conversation_1"));
    run.critic_feedback = j.at("critic_feedback").get<std::string>();
    run.conversation_2 = ConversationFrom(j.at("conversation_2"));
    run.feedback_history = j.at("feedback_history").get<std::vector<std::string>>();
    for (const auto& c : j.at("intermediate_conversations")) {
      run.intermediate_conversations.push_back(ConversationFrom(c));
    }
    run.doctor_context = ContextFrom(j.at("doctor_context"));
    run.validation = EnumFrom<Validation>(j.at("validation"), kValidations, "validation");
    run.validation_reason = j.at("validation_reason").get<std::string>();
    run.regeneration_count = j.at("regeneration_count").get<int>();
    run.critic_calls = j.at("critic_calls").get<int>();
    return run;
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("run file: ") + e.what());
  }
}

std::string ManifestToJson(const RunManifest& m) {
  const Json j = {{"run_ids", m.run_ids},
                  {"corpus_path", m.corpus_path},
                  {"corpus_digest", m.corpus_digest},
                  {"config_digest", m.config_digest},
                  {"engine_config", EngineConfigJson(m.engine_config)},
                  {"backend_mode", m.backend_mode},
                  {"created_at", m.created_at}};
  return j.dump(2) + "\n";
}

RunManifest ManifestFromJson(std::string_view json) {
  const Json j = Parse(json, "manifest");
  try {
    RunManifest m;
    m.run_ids = j.at("run_ids").get<std::vector<std::string>>();
    m.corpus_path = j.at("corpus_path").get<std::string>();
    m.corpus_digest = j.at("corpus_digest").get<std::string>();
    m.config_digest = j.at("config_digest").get<std::string>();
    m.engine_config = EngineConfigFrom(j.at("engine_config"));
    m.backend_mode = j.at("backend_mode").get<std::string>();
    m.created_at = j.at("created_at").get<std::string>();
    return m;
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("manifest: ") + e.what());
  }
}

std::string ConfigDigest(const EngineConfig& engine, const BackendConfig& backend) {
  Json j = {{"critic_rounds", engine.critic_rounds},
            {"max_turns_per_conversation", engine.max_turns_per_conversation},
            {"max_regenerations", engine.max_regenerations},
            {"reuse_first_patient_turn", engine.reuse_first_patient_turn},
            {"mode", ModeName(backend.mode)},
            {"temperature", backend.temperature}};
  if (backend.mode == BackendConfig::Mode::kLive) {
    j["endpoint"] = backend.endpoint;
    j["model_name"] = backend.model_name;
    j["adapter"] = backend.adapter;
    j["max_tokens"] = backend.max_tokens;
  } else {
    std::error_code ec;
    j["script_digest"] = std::filesystem::is_regular_file(backend.script_path, ec)
                             ? Sha256Hex(ReadFile(backend.script_path.string()))
                             : "";
  }
  return Sha256Hex(j.dump());
}

std::string NowIso8601() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

void WriteSuite(const std::filesystem::path& out_dir, const std::vector<DialogueRun>& runs,
                const RunManifest& manifest) {
  std::filesystem::create_directories(out_dir / "runs");
  for (const auto& run : runs) {
    WriteFile((out_dir / "runs" / (run.run_id + ".json")).string(), RunToJson(run));
  }
  WriteFile((out_dir / "manifest.json").string(), ManifestToJson(manifest));
}

Suite ReadSuite(const std::filesystem::path& dir) {
  Suite suite;
  const auto manifest_path = dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path)) {
    throw std::runtime_error("no manifest.json in " + dir.string());
  }
  suite.manifest = ManifestFromJson(ReadFile(manifest_path.string()));
  for (const auto& id : suite.manifest.run_ids) {
    const auto path = dir / "runs" / (id + ".json");
    if (!std::filesystem::exists(path)) {
      throw std::runtime_error("run listed in manifest is missing: " + path.string());
    }
    DialogueRun run = RunFromJson(ReadFile(path.string()));
    if (run.run_id != id) {
      throw std::runtime_error(path.string() + " holds run \"" + run.run_id + "\"");
    }
    suite.runs.push_back(std::move(run));
  }
  return suite;
}

}  // namespace pcc
