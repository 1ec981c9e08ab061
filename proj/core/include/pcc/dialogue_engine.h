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

#ifndef PCC_DIALOGUE_ENGINE_H_
#define PCC_DIALOGUE_ENGINE_H_

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcc/backend.h"
#include "pcc/corpus.h"

namespace pcc {

enum class Speaker { kDoctor, kPatient };

struct Turn {
  Speaker speaker = Speaker::kDoctor;
  std::string text;
  int index = 0;

  bool operator==(const Turn&) const = default;
};

enum class Round { kPreFeedback, kPostFeedback };
enum class Termination { kModeratorStop, kMaxTurnsCap };

struct Conversation {
  std::string vignette_id;
  std::string constitution_id;
  Round round = Round::kPreFeedback;
  std::vector<Turn> turns;
  Termination termination = Termination::kMaxTurnsCap;

  bool operator==(const Conversation&) const = default;
};

enum class Validation { kPending, kValid, kPatientViolation };

std::string_view SpeakerName(Speaker s);
std::string_view RoundName(Round r);
std::string_view TerminationName(Termination t);
std::string_view ValidationName(Validation v);

// One (vignette, constitution) cell: the pre-feedback conversation, critique,
// and the post-feedback conversation that raters assess.
struct DialogueRun {
  std::string run_id;
  std::string vignette_id;
  std::string constitution_id;
  Conversation conversation_1;
  std::string critic_feedback;  // last round
  Conversation conversation_2;
  // With more than one critic round: every feedback in order, and the
  // conversations between the first and the final one.
  std::vector<std::string> feedback_history;
  std::vector<Conversation> intermediate_conversations;
  PromptContext doctor_context;  // as it stood after the final conversation
  Validation validation = Validation::kPending;
  std::string validation_reason;
  int regeneration_count = 0;
  int critic_calls = 0;

  bool operator==(const DialogueRun&) const = default;
};

std::string RunId(std::string_view vignette_id,
                  std::string_view constitution_id);

struct EngineConfig {
  int critic_rounds = 1;
  int max_turns_per_conversation = 20;
  int max_regenerations = 3;
  bool reuse_first_patient_turn = true;
  int parallelism = 1;

  // Throws std::invalid_argument when a bound is violated.
  void Validate() const;
};

// Everything a generation call needs besides the prompt.
struct EngineContext {
  TextBackend* backend = nullptr;
  RetryPolicy retry;
  EngineConfig config;
};

// Identifies the cell and attempt a generation belongs to; turned into the
// script scopes of each request.
struct CellScope {
  std::string vignette_id;
  std::string constitution_id;
  int attempt = 0;

  std::vector<std::string> ScriptScopes() const;
};

// Thread-safe store of the patient's first reply per vignette.
class FirstPatientTurnCache {
 public:
  std::optional<std::string> Get(std::string_view vignette_id) const;
  // Keeps the first stored value; returns the value now held.
  std::string PutIfAbsent(std::string_view vignette_id, std::string text);

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::string, std::less<>> entries_;
};

class ConversationAborted : public std::runtime_error {
 public:
  ConversationAborted(const std::string& message, Conversation partial)
      : std::runtime_error(message), partial_(std::move(partial)) {}
  const Conversation& partial() const { return partial_; }

 private:
  Conversation partial_;
};

// Stage-labelled failure of a whole run ("conversation_1", "critic_round_1",
// ...). Carries the partial transcript when a conversation was cut short.
class RunError : public std::runtime_error {
 public:
  RunError(std::string stage, std::string cell, const std::string& message,
           std::optional<Conversation> partial = std::nullopt);
  const std::string& stage() const { return stage_; }
  const std::string& cell() const { return cell_; }
  const std::optional<Conversation>& partial() const { return partial_; }

 private:
  std::string stage_;
  std::string cell_;
  std::optional<Conversation> partial_;
};

class RegenerationBudgetExhausted : public std::runtime_error {
 public:
  RegenerationBudgetExhausted(std::string cell, int attempts,
                              const std::string& last_reason);
  const std::string& cell() const { return cell_; }
  int attempts() const { return attempts_; }

 private:
  std::string cell_;
  int attempts_;
};

enum class ModeratorDecision { kContinue, kStop };

// Finds the first CONTINUE or STOP token (whole word, any case).
std::optional<ModeratorDecision> ParseModeratorVerdict(std::string_view text);

// "Doctor: ...\nPatient: ..." rendering shared by moderator and critic.
std::string RenderTranscript(std::span<const Turn> turns);

// Asks the moderator whether the conversation is over. Unparseable verdicts
// are logged and treated as continue.
ModeratorDecision Moderate(const EngineContext& ctx,
                           const PromptContext& moderator_ctx,
                           std::span<const Turn> transcript,
                           const CellScope& scope, int turn_index);

struct ConversationSetup {
  PromptContext* doctor_ctx = nullptr;  // grows as the doctor speaks
  PromptContext patient_ctx;            // system prompt; fresh per conversation
  PromptContext moderator_ctx;          // system prompt only
  std::string vignette_id;
  std::string constitution_id;
  Round round = Round::kPreFeedback;
  // When set, turn 0 is the doctor's last committed message (the forced
  // opener of the feedback exchange) instead of a generation.
  bool doctor_opener_forced = false;
  std::optional<std::string> first_patient_reply;
  int turn_offset = 0;  // run-global index of turn 0, for script keys
};

// Doctor and patient alternate, doctor first; the moderator is consulted
// after every patient turn. Throws ConversationAborted on backend failure.
Conversation RunConversation(const EngineContext& ctx,
                             ConversationSetup& setup, const CellScope& scope);

Conversation RunConversation(const EngineContext& ctx,
                             ConversationSetup& setup);

// Conversation 1, critic feedback (cfg.critic_rounds times) with injection,
// and the final conversation. Fills and reads `cache` per the reuse flag.
// Throws RunError.
DialogueRun RunDialogue(const EngineContext& ctx, const Vignette& vignette,
                        const Constitution& constitution,
                        FirstPatientTurnCache& cache, int attempt = 0);

struct FidelityVerdict {
  Validation status = Validation::kValid;
  std::string reason;
};

using FidelityValidator =
    std::function<FidelityVerdict(const DialogueRun&, const Vignette&)>;

// Keyword screen for symptoms the vignette does not affirm plus a role-break
// screen ("AI", "language model") over every patient turn.
FidelityValidator DefaultFidelityValidator();

// Runs `validator` and stores its verdict on `run`. A throwing validator
// marks the run as a violation with the exception text as the reason.
Validation ValidatePatientFidelity(DialogueRun& run, const Vignette& vignette,
                                   const FidelityValidator& validator);

// Called once per failed attempt, for logging and tests.
using AttemptObserver =
    std::function<void(const std::string& cell, int attempt,
                       const FidelityVerdict& verdict)>;

// One valid run per (vignette x constitution), in (vignette, constitution)
// order. Throws RegenerationBudgetExhausted or RunError.
std::vector<DialogueRun> GenerateSuite(const Corpus& corpus,
                                       const EngineContext& ctx,
                                       const FidelityValidator& validator,
                                       const AttemptObserver& observer = {});

}  // namespace pcc

#endif  // PCC_DIALOGUE_ENGINE_H_
