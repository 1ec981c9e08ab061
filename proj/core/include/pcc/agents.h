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

#ifndef PCC_AGENTS_H_
#define PCC_AGENTS_H_

#include <string>
#include <string_view>

#include "pcc/backend.h"
#include "pcc/corpus.h"

namespace pcc {

inline constexpr std::string_view kCriticFrame =
    "You are an AI critic providing feedback";
inline constexpr std::string_view kDoctorWordLimit =
    "Give your responses in 50 words or less.";
inline constexpr std::string_view kPatientWordLimit =
    "Give your responses in 60 words or less.";

// Forced exchange appended to the doctor's context after critique.
inline constexpr std::string_view kFeedbackPrefix =
    "Here is feedback on your previous interaction with the patient: ";
inline constexpr std::string_view kFeedbackSuffix =
    " Incorporate this feedback into your responses in the next turn of "
    "conversation";
inline constexpr std::string_view kFeedbackAcknowledgement =
    "I understand and have acknowledged the feedback. I will incorporate it "
    "into the next turn of the conversation.";
inline constexpr std::string_view kNextRoundNotice =
    "The next round of conversation is about to start.";
inline constexpr std::string_view kDoctorOpener =
    "Hello, how can I help you today?";

// User message that precedes the doctor's opener in the first conversation.
inline constexpr std::string_view kConversationKickoff =
    "The conversation is about to start.";

// Renders the system prompt for `role`. The vignette is required for (and
// only accepted by) the patient; the constitution likewise for the critic.
// Throws std::invalid_argument otherwise. Pure.
std::string RenderSystemPrompt(AgentRole role, const Vignette* vignette,
                               const Constitution* constitution);

// Appends the four-message feedback exchange. `doctor_ctx` must end with an
// assistant message; throws std::invalid_argument if it does not.
PromptContext InjectFeedback(const PromptContext& doctor_ctx,
                             std::string_view feedback);

}  // namespace pcc

#endif  // PCC_AGENTS_H_
