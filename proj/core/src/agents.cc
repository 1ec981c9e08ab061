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

#include "pcc/agents.h"

#include <stdexcept>

#include "pcc/logging.h"

namespace pcc {
namespace {

constexpr std::string_view kDoctorPrompt =
    "You are a Doctor speaking to a patient over an online chat interface. "
    "You know nothing about the patient in advance. Respond in single-turn "
    "responses to understand their symptoms and find a diagnosis. You should "
    "provide a diagnosis to the patient. You are the healthcare provider. Do "
    "not tell the patient to see a healthcare provider. Do not reveal you are "
    "an AI bot. Give your responses in 50 words or less.";

constexpr std::string_view kPatientPreamble =
    "You are a patient chatting with a doctor over an online chat interface. "
    "The doctor has never met you before. This is your profile:";

constexpr std::string_view kPatientClosing =
    "Using the profile you should answer as the patient. Do not reveal you are "
    "an AI chatbot. Give your responses in 60 words or less.";

constexpr std::string_view kModeratorPrompt =
    "You are a helpful AI agent which is monitoring a simulated conversation "
    "between a Doctor and a Patient. You should stop the conversation when you "
    "feel a natural conclusion has been reached. Do not terminate the "
    "conversation if there are any open questions left unanswered.";

// Verdict protocol the moderator parser relies on.
constexpr std::string_view kModeratorProtocol =
    "Reply with a single line containing STOP if the conversation should end "
    "now, or CONTINUE if it should go on.";

std::string RenderPatient(const Vignette& v) {
  std::string out(kPatientPreamble);
  out += "\n\n";
  out += "Demographics: " + v.demographics + "\n";
  out += "Overview: " + v.overview + "\n";
  out += "Primary Symptoms: " + v.primary_symptoms + "\n";
  out += "Secondary Symptoms: " + v.secondary_symptoms + "\n";
  out += "Medical History: " + v.medical_history + "\n";
  out += "Social History: " + v.social_history + "\n";
  out += "Key Review of Vitals: " + v.key_vitals + "\n\n";
  out += kPatientClosing;
  return out;
}

// Shipped constitutions are complete critic instructions already; the frame
// and the limit sentence are only added where a constitution lacks them.
std::string RenderCritic(const Constitution& c) {
  std::string body(c.critic_guideline_text);
  std::string out;
  if (body.rfind(kCriticFrame, 0) == 0) {
    out = body;
  } else {
    out = std::string(kCriticFrame) + (body.empty() ? "" : " ") + body;
  }
  const std::string limit = FeedbackLimitSentence(c.feedback_word_limit);
  if (out.size() < limit.size() ||
      out.compare(out.size() - limit.size(), limit.size(), limit) != 0) {
    out += " " + limit;
  }
  return out;
}

}  // namespace

std::string RenderSystemPrompt(AgentRole role, const Vignette* vignette,
                               const Constitution* constitution) {
  if ((role == AgentRole::kPatient) != (vignette != nullptr)) {
    throw std::invalid_argument(role == AgentRole::kPatient
                                    ? "patient prompt requires a vignette"
                                    : "only the patient prompt takes a vignette");
  }
  if ((role == AgentRole::kCritic) != (constitution != nullptr)) {
    throw std::invalid_argument(role == AgentRole::kCritic
                                    ? "critic prompt requires a constitution"
                                    : "only the critic prompt takes a constitution");
  }
  switch (role) {
    case AgentRole::kPatient:
      return RenderPatient(*vignette);
    case AgentRole::kDoctor:
      return std::string(kDoctorPrompt);
    case AgentRole::kModerator:
      return std::string(kModeratorPrompt) + "\n\n" + std::string(kModeratorProtocol);
    case AgentRole::kCritic:
      return RenderCritic(*constitution);
  }
  throw std::invalid_argument("unknown role");
}

PromptContext InjectFeedback(const PromptContext& doctor_ctx,
                             std::string_view feedback) {
  if (doctor_ctx.messages.empty() ||
      doctor_ctx.messages.back().author != Author::kAssistant) {
    throw std::invalid_argument(
        "feedback can only follow a completed conversation (context must end "
        "with an assistant message)");
  }
  if (feedback.empty()) {
    Logger()->warn("injecting empty critic feedback");
  }
  PromptContext out = doctor_ctx;
  std::string wrapped(kFeedbackPrefix);
  wrapped += feedback;
  wrapped += kFeedbackSuffix;
  out.messages.push_back({Author::kUser, std::move(wrapped)});
  out.messages.push_back({Author::kAssistant, std::string(kFeedbackAcknowledgement)});
  out.messages.push_back({Author::kUser, std::string(kNextRoundNotice)});
  out.messages.push_back({Author::kAssistant, std::string(kDoctorOpener)});
  return out;
}

}  // namespace pcc
