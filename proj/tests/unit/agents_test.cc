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

#include "fixtures.h"
#include "gtest/gtest.h"

namespace pcc {
namespace {

class AgentsTest : public ::testing::Test {
 protected:
  Corpus corpus_ = LoadCorpus(testing::ShippedCorpusDir());
};

bool Contains(const std::string& haystack, std::string_view needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST_F(AgentsTest, DoctorPromptCarriesWordLimit) {
  const std::string p = RenderSystemPrompt(AgentRole::kDoctor, nullptr, nullptr);
  EXPECT_TRUE(Contains(p, "Give your responses in 50 words or less."));
  EXPECT_TRUE(Contains(p, "Do not reveal you are an AI bot."));
}

TEST_F(AgentsTest, PatientPromptEmbedsVignetteVerbatim) {
  const Vignette& v = corpus_.vignettes[0];
  const std::string p = RenderSystemPrompt(AgentRole::kPatient, &v, nullptr);
  EXPECT_TRUE(Contains(p, "Give your responses in 60 words or less."));
  EXPECT_TRUE(Contains(p, "Overview: " + v.overview));
  EXPECT_TRUE(Contains(p, "Key Review of Vitals: " + v.key_vitals));
  EXPECT_TRUE(Contains(p, "This is your profile:"));
}

TEST_F(AgentsTest, CriticPromptForNoneHasNoRoleFraming) {
  const std::string p =
      RenderSystemPrompt(AgentRole::kCritic, nullptr, corpus_.FindConstitution("none"));
  EXPECT_TRUE(Contains(p, "Give your feedback in 100 words or less."));
  EXPECT_FALSE(Contains(p, "doctor"));
  EXPECT_FALSE(Contains(p, "patient"));
}

TEST_F(AgentsTest, ShippedConstitutionsRenderUnchanged) {
  for (const auto& c : corpus_.constitutions) {
    EXPECT_EQ(RenderSystemPrompt(AgentRole::kCritic, nullptr, &c), c.critic_guideline_text)
        << c.id;
  }
}

TEST_F(AgentsTest, CriticFrameIsAddedWhenMissing) {
  const Constitution c{"bare", "Bare", "to a tutor. Be specific.", 80};
  EXPECT_EQ(RenderSystemPrompt(AgentRole::kCritic, nullptr, &c),
            "You are an AI critic providing feedback to a tutor. Be specific. Give your "
            "feedback in 80 words or less.");
}

TEST_F(AgentsTest, ModeratorPromptStatesVerdictProtocol) {
  const std::string p = RenderSystemPrompt(AgentRole::kModerator, nullptr, nullptr);
  EXPECT_TRUE(Contains(p, "natural conclusion"));
  EXPECT_TRUE(Contains(p, "STOP"));
  EXPECT_TRUE(Contains(p, "CONTINUE"));
}

TEST_F(AgentsTest, RenderingIsPure) {
  const Vignette& v = corpus_.vignettes[1];
  EXPECT_EQ(RenderSystemPrompt(AgentRole::kPatient, &v, nullptr),
            RenderSystemPrompt(AgentRole::kPatient, &v, nullptr));
}

TEST_F(AgentsTest, WrongInputsAreRejected) {
  const Vignette& v = corpus_.vignettes[0];
  const Constitution& c = corpus_.constitutions[0];
  EXPECT_THROW(RenderSystemPrompt(AgentRole::kPatient, nullptr, nullptr), std::invalid_argument);
  EXPECT_THROW(RenderSystemPrompt(AgentRole::kDoctor, &v, nullptr), std::invalid_argument);
  EXPECT_THROW(RenderSystemPrompt(AgentRole::kCritic, nullptr, nullptr), std::invalid_argument);
  EXPECT_THROW(RenderSystemPrompt(AgentRole::kDoctor, nullptr, &c), std::invalid_argument);
}

PromptContext DoctorAfterConversation() {
  return {"sys",
          {{Author::kUser, std::string(kConversationKickoff)},
           {Author::kAssistant, "Hello"},
           {Author::kUser, "I have a rash"},
           {Author::kAssistant, "Let me look"}}};
}

TEST(InjectFeedbackTest, AppendsTheFourMessageExchange) {
  const PromptContext before = DoctorAfterConversation();
  const PromptContext after = InjectFeedback(before, "F");
  ASSERT_EQ(after.messages.size(), before.messages.size() + 4);
  const auto* added = &after.messages[before.messages.size()];
  EXPECT_EQ(added[0], (Message{Author::kUser,
                               "Here is feedback on your previous interaction with the patient: F "
                               "Incorporate this feedback into your responses in the next turn "
                               "of conversation"}));
  EXPECT_EQ(added[1],
            (Message{Author::kAssistant,
                     "I understand and have acknowledged the feedback. I will incorporate it "
                     "into the next turn of the conversation."}));
  EXPECT_EQ(added[2], (Message{Author::kUser, "The next round of conversation is about to start."}));
  EXPECT_EQ(added[3], (Message{Author::kAssistant, "Hello, how can I help you today?"}));
  EXPECT_TRUE(after.IsAlternating());
}

TEST(InjectFeedbackTest, EmptyFeedbackStillWrapsAndWarns) {
  testing::LogCapture log;
  const PromptContext after = InjectFeedback(DoctorAfterConversation(), "");
  EXPECT_EQ(after.messages[4].text,
            "Here is feedback on your previous interaction with the patient:  Incorporate this "
            "feedback into your responses in the next turn of conversation");
  EXPECT_TRUE(log.Contains("empty"));
}

TEST(InjectFeedbackTest, TwiceAppendsEightAndStaysAlternating) {
  const PromptContext before = DoctorAfterConversation();
  const PromptContext after = InjectFeedback(InjectFeedback(before, "A"), "B");
  EXPECT_EQ(after.messages.size(), before.messages.size() + 8);
  EXPECT_TRUE(after.IsAlternating());
}

TEST(InjectFeedbackTest, RequiresTrailingAssistantMessage) {
  PromptContext ctx = DoctorAfterConversation();
  ctx.messages.pop_back();
  EXPECT_THROW(InjectFeedback(ctx, "F"), std::invalid_argument);
  EXPECT_THROW(InjectFeedback(PromptContext{"sys", {}}, "F"), std::invalid_argument);
}

}  // namespace
}  // namespace pcc
