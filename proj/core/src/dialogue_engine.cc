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

#include "pcc/dialogue_engine.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <exception>
#include <thread>

#include "pcc/agents.h"
#include "pcc/logging.h"

namespace pcc {
namespace {

constexpr std::array<std::string_view, 2> kSpeakerNames = {"doctor", "patient"};
constexpr std::array<std::string_view, 2> kRoundNames = {"pre_feedback", "post_feedback"};
constexpr std::array<std::string_view, 2> kTerminationNames = {"moderator_stop",
                                                               "max_turns_cap"};
constexpr std::array<std::string_view, 3> kValidationNames = {"pending", "valid",
                                                              "patient_violation"};

std::string GenerateOrAbort(const EngineContext& ctx, AgentRole role, int turn_index,
                            const std::vector<std::string>& scopes,
                            const PromptContext& prompt, const Conversation& partial) {
  GenerationRequest request{role, turn_index, scopes, &prompt};
  try {
    return Generate(*ctx.backend, ctx.retry, request).text;
  } catch (const BackendError& e) {
    throw ConversationAborted(std::string(RoleName(role)) + " generation for turn " +
                                  std::to_string(turn_index) + " failed: " + e.what(),
                              partial);
  }
}

}  // namespace

std::string_view SpeakerName(Speaker s) { return kSpeakerNames[static_cast<int>(s)]; }
std::string_view RoundName(Round r) { return kRoundNames[static_cast<int>(r)]; }
std::string_view TerminationName(Termination t) {
  return kTerminationNames[static_cast<int>(t)];
}
std::string_view ValidationName(Validation v) {
  return kValidationNames[static_cast<int>(v)];
}

std::string RunId(std::string_view vignette_id, std::string_view constitution_id) {
  std::string id(vignette_id);
  id += "__";
  id += constitution_id;
  return id;
}

void EngineConfig::Validate() const {
  if (critic_rounds < 1) throw std::invalid_argument("critic_rounds must be >= 1");
  if (max_turns_per_conversation < 1) {
    throw std::invalid_argument("max_turns_per_conversation must be >= 1");
  }
  if (max_regenerations < 0) throw std::invalid_argument("max_regenerations must be >= 0");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
}

std::vector<std::string> CellScope::ScriptScopes() const {
  std::vector<std::string> scopes;
  if (!vignette_id.empty() && !constitution_id.empty()) {
    const std::string cell = RunId(vignette_id, constitution_id);
    scopes.push_back(cell + "#" + std::to_string(attempt));
    scopes.push_back(cell);
  }
  if (!vignette_id.empty()) scopes.push_back(vignette_id);
  if (!constitution_id.empty()) scopes.push_back(constitution_id);
  return scopes;
}

std::optional<std::string> FirstPatientTurnCache::Get(std::string_view vignette_id) const {
  std::lock_guard lock(mu_);
  if (auto it = entries_.find(vignette_id); it != entries_.end()) return it->second;
  return std::nullopt;
}

std::string FirstPatientTurnCache::PutIfAbsent(std::string_view vignette_id,
                                               std::string text) {
  std::lock_guard lock(mu_);
  auto [it, inserted] = entries_.try_emplace(std::string(vignette_id), std::move(text));
  return it->second;
}

RunError::RunError(std::string stage, std::string cell, const std::string& message,
                   std::optional<Conversation> partial)
    : std::runtime_error(cell + " [" + stage + "]: " + message),
      stage_(std::move(stage)),
      cell_(std::move(cell)),
      partial_(std::move(partial)) {}

RegenerationBudgetExhausted::RegenerationBudgetExhausted(std::string cell, int attempts,
                                                         const std::string& last_reason)
    : std::runtime_error(cell + ": no valid dialogue after " + std::to_string(attempts) +
                         " attempts (last: " + last_reason + ")"),
      cell_(std::move(cell)),
      attempts_(attempts) {}

std::optional<ModeratorDecision> ParseModeratorVerdict(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    std::string word;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
      ++i;
    }
    if (word == "continue") return ModeratorDecision::kContinue;
    if (word == "stop") return ModeratorDecision::kStop;
  }
  return std::nullopt;
}

std::string RenderTranscript(std::span<const Turn> turns) {
  std::string out;
  for (const auto& t : turns) {
    out += t.speaker == Speaker::kDoctor ? "Doctor: " : "Patient: ";
    out += t.text;
    out += '\n';
  }
  return out;
}

ModeratorDecision Moderate(const EngineContext& ctx, const PromptContext& moderator_ctx,
                           std::span<const Turn> transcript, const CellScope& scope,
                           int turn_index) {
  if (transcript.empty()) throw std::invalid_argument("moderator needs a transcript");
  // The full transcript is re-rendered for every consultation.
  PromptContext prompt{moderator_ctx.system_prompt,
                       {{Author::kUser, "Conversation so far:\n\n" + RenderTranscript(transcript)}}};
  GenerationRequest request{AgentRole::kModerator, turn_index, scope.ScriptScopes(), &prompt};
  const std::string verdict = Generate(*ctx.backend, ctx.retry, request).text;
  if (auto decision = ParseModeratorVerdict(verdict)) return *decision;
  Logger()->warn("unparseable moderator verdict \"{}\"; continuing the conversation", verdict);
  return ModeratorDecision::kContinue;
}

Conversation RunConversation(const EngineContext& ctx, ConversationSetup& setup) {
  return RunConversation(ctx, setup, CellScope{setup.vignette_id, setup.constitution_id, 0});
}

Conversation RunConversation(const EngineContext& ctx, ConversationSetup& setup,
                             const CellScope& scope) {
  if (setup.doctor_ctx == nullptr) throw std::invalid_argument("missing doctor context");
  PromptContext& doctor = *setup.doctor_ctx;
  PromptContext patient = setup.patient_ctx;
  const std::vector<std::string> scopes = scope.ScriptScopes();
  const int cap = ctx.config.max_turns_per_conversation;

  Conversation conv;
  conv.vignette_id = setup.vignette_id;
  conv.constitution_id = setup.constitution_id;
  conv.round = setup.round;

  for (int t = 0; t < cap; ++t) {
    const int global_index = setup.turn_offset + t;
    if (t % 2 == 0) {
      std::string text;
      if (t == 0 && setup.doctor_opener_forced) {
        if (doctor.messages.empty() || doctor.messages.back().author != Author::kAssistant) {
          throw std::invalid_argument("forced opener requires a doctor context ending in "
                                      "an assistant message");
        }
        text = doctor.messages.back().text;
      } else {
        // The doctor sees a patient message only when answering it.
        PromptContext request = doctor.WithUser(
            t == 0 ? std::string(kConversationKickoff) : conv.turns.back().text);
        text = GenerateOrAbort(ctx, AgentRole::kDoctor, global_index, scopes, request, conv);
        request.messages.push_back({Author::kAssistant, text});
        doctor = std::move(request);
      }
      conv.turns.push_back({Speaker::kDoctor, std::move(text), t});
      continue;
    }

    PromptContext request = patient.WithUser(conv.turns.back().text);
    std::string text;
    if (t == 1 && setup.first_patient_reply) {
      text = *setup.first_patient_reply;
    } else {
      text = GenerateOrAbort(ctx, AgentRole::kPatient, global_index, scopes, request, conv);
    }
    request.messages.push_back({Author::kAssistant, text});
    patient = std::move(request);
    conv.turns.push_back({Speaker::kPatient, std::move(text), t});

    ModeratorDecision decision;
    try {
      decision = Moderate(ctx, setup.moderator_ctx, conv.turns, scope, global_index);
    } catch (const BackendError& e) {
      throw ConversationAborted(
          "moderator after turn " + std::to_string(global_index) + " failed: " + e.what(), conv);
    }
    if (decision == ModeratorDecision::kStop) {
      conv.termination = Termination::kModeratorStop;
      return conv;
    }
  }
  conv.termination = Termination::kMaxTurnsCap;
  return conv;
}

DialogueRun RunDialogue(const EngineContext& ctx, const Vignette& vignette,
                        const Constitution& constitution, FirstPatientTurnCache& cache,
                        int attempt) {
  const EngineConfig& cfg = ctx.config;
  DialogueRun run;
  run.vignette_id = vignette.id;
  run.constitution_id = constitution.id;
  run.run_id = RunId(vignette.id, constitution.id);

  const CellScope scope{vignette.id, constitution.id, attempt};
  const PromptContext patient_base{RenderSystemPrompt(AgentRole::kPatient, &vignette, nullptr), {}};
  const PromptContext moderator_base{
      RenderSystemPrompt(AgentRole::kModerator, nullptr, nullptr), {}};
  const PromptContext critic_base{RenderSystemPrompt(AgentRole::kCritic, nullptr, &constitution),
                                  {}};
  PromptContext doctor{RenderSystemPrompt(AgentRole::kDoctor, nullptr, nullptr), {}};

  auto converse = [&](const std::string& stage, ConversationSetup& setup) {
    try {
      return RunConversation(ctx, setup, scope);
    } catch (const ConversationAborted& e) {
      throw RunError(stage, run.run_id, e.what(), e.partial());
    }
  };

  ConversationSetup first;
  first.doctor_ctx = &doctor;
  first.patient_ctx = patient_base;
  first.moderator_ctx = moderator_base;
  first.vignette_id = vignette.id;
  first.constitution_id = constitution.id;
  first.round = Round::kPreFeedback;
  if (cfg.reuse_first_patient_turn) first.first_patient_reply = cache.Get(vignette.id);

  Conversation latest = converse("conversation_1", first);
  if (cfg.reuse_first_patient_turn && !first.first_patient_reply && latest.turns.size() >= 2) {
    cache.PutIfAbsent(vignette.id, latest.turns[1].text);
  }
  run.conversation_1 = latest;
  int offset = static_cast<int>(latest.turns.size());

  for (int round = 0; round < cfg.critic_rounds; ++round) {
    const std::string stage = "critic_round_" + std::to_string(round + 1);
    PromptContext critic = critic_base;
    critic.messages.push_back({Author::kUser, RenderTranscript(latest.turns)});
    std::string feedback;
    try {
      GenerationRequest request{AgentRole::kCritic, round, scope.ScriptScopes(), &critic};
      feedback = Generate(*ctx.backend, ctx.retry, request).text;
      doctor = InjectFeedback(doctor, feedback);
    } catch (const std::exception& e) {
      throw RunError(stage, run.run_id, e.what());
    }
    ++run.critic_calls;
    run.feedback_history.push_back(feedback);

    ConversationSetup next;
    next.doctor_ctx = &doctor;
    next.patient_ctx = patient_base;
    next.moderator_ctx = moderator_base;
    next.vignette_id = vignette.id;
    next.constitution_id = constitution.id;
    next.round = Round::kPostFeedback;
    next.doctor_opener_forced = true;
    next.turn_offset = offset;
    latest = converse("conversation_" + std::to_string(round + 2), next);
    offset += static_cast<int>(latest.turns.size());
    if (round + 1 < cfg.critic_rounds) run.intermediate_conversations.push_back(latest);
  }

  run.conversation_2 = std::move(latest);
  run.critic_feedback = run.feedback_history.back();
  run.doctor_context = std::move(doctor);
  return run;
}

Validation ValidatePatientFidelity(DialogueRun& run, const Vignette& vignette,
                                   const FidelityValidator& validator) {
  FidelityVerdict verdict;
  try {
    verdict = validator(run, vignette);
  } catch (const std::exception& e) {
    verdict = {Validation::kPatientViolation, std::string("validator failed: ") + e.what()};
  }
  if (verdict.status == Validation::kPending) {
    verdict = {Validation::kPatientViolation, "validator returned no verdict"};
  }
  run.validation = verdict.status;
  run.validation_reason = verdict.reason;
  return verdict.status;
}

std::vector<DialogueRun> GenerateSuite(const Corpus& corpus, const EngineContext& ctx,
                                       const FidelityValidator& validator,
                                       const AttemptObserver& observer) {
  ctx.config.Validate();
  if (ctx.backend == nullptr) throw std::invalid_argument("no backend");

  struct Cell {
    const Vignette* vignette;
    const Constitution* constitution;
  };
  std::vector<Cell> cells;
  for (const auto& v : corpus.vignettes) {
    for (const auto& c : corpus.constitutions) cells.push_back({&v, &c});
  }

  FirstPatientTurnCache cache;
  const int budget = ctx.config.max_regenerations;

  auto run_cell = [&](const Cell& cell) {
    const std::string id = RunId(cell.vignette->id, cell.constitution->id);
    std::string last_reason;
    for (int attempt = 0; attempt <= budget; ++attempt) {
      DialogueRun run = RunDialogue(ctx, *cell.vignette, *cell.constitution, cache, attempt);
      if (ValidatePatientFidelity(run, *cell.vignette, validator) == Validation::kValid) {
        run.regeneration_count = attempt;
        return run;
      }
      last_reason = run.validation_reason;
      Logger()->warn("{} attempt {} rejected: {}", id, attempt + 1, last_reason);
      if (observer) observer(id, attempt, {run.validation, run.validation_reason});
    }
    throw RegenerationBudgetExhausted(id, budget + 1, last_reason);
  };

  std::vector<std::optional<DialogueRun>> results(cells.size());
  if (ctx.config.parallelism <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) results[i] = run_cell(cells[i]);
  } else {
    // Populate-then-fan-out: the first cell of each vignette fills the cache
    // before any other cell of that vignette starts.
    std::vector<std::size_t> fan_out;
    std::string seen_vignette;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (ctx.config.reuse_first_patient_turn && cells[i].vignette->id != seen_vignette) {
        seen_vignette = cells[i].vignette->id;
        results[i] = run_cell(cells[i]);
      } else {
        fan_out.push_back(i);
      }
    }
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next++; k < fan_out.size(); k = next++) {
        const std::size_t i = fan_out[k];
        try {
          results[i] = run_cell(cells[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> workers;
    const int n = std::min<int>(ctx.config.parallelism, static_cast<int>(fan_out.size()));
    for (int w = 0; w < n; ++w) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<DialogueRun> runs;
  runs.reserve(results.size());
  for (auto& r : results) runs.push_back(std::move(*r));
  return runs;
}

}  // namespace pcc
