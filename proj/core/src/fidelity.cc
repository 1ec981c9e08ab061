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

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "pcc/dialogue_engine.h"
#include "pcc/text.h"

namespace pcc {
namespace {

constexpr std::array<std::string_view, 33> kSymptomLexicon = {
    "abdominal pain", "back pain",   "bleeding",      "blurred vision", "chest pain",
    "chills",         "constipation", "cough",        "coughing",       "diarrhea",
    "dizziness",      "dizzy",       "fatigue",       "fever",          "headache",
    "headaches",      "itching",     "itchy",         "joint pain",     "nausea",
    "numbness",       "pain",        "painful",       "palpitations",   "rash",
    "seizure",        "shortness of breath", "sore throat", "swelling", "vomiting",
    "weight gain",    "weight loss", "wheezing",
};

constexpr std::array<std::string_view, 10> kNegationCues = {
    "no", "not", "never", "without", "denies", "deny", "denied", "none", "nor", "neither",
};

bool IsWordChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string Normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2019 right single quotation mark.
    if (text.compare(i, 3, "\xE2\x80\x99") == 0) {
      out.push_back('\'');
      i += 2;
      continue;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
  }
  return out;
}

std::vector<std::string> Clauses(std::string_view lowered) {
  std::vector<std::string> clauses;
  std::string current;
  for (std::size_t i = 0; i < lowered.size(); ++i) {
    const char c = lowered[i];
    const bool boundary = c == '.' || c == ';' || c == '!' || c == '?' || c == '\n' ||
                          (lowered.compare(i, 5, " but ") == 0);
    if (boundary) {
      if (!current.empty()) clauses.push_back(std::move(current));
      current.clear();
      continue;
    }
    current.push_back(c);
  }
  if (!current.empty()) clauses.push_back(std::move(current));
  return clauses;
}

// Positions of whole-word occurrences of `term` in `text`.
std::vector<std::size_t> FindWord(std::string_view text, std::string_view term) {
  std::vector<std::size_t> hits;
  for (std::size_t pos = text.find(term); pos != std::string_view::npos;
       pos = text.find(term, pos + 1)) {
    const bool left = pos == 0 || !IsWordChar(text[pos - 1]);
    const std::size_t end = pos + term.size();
    const bool right = end >= text.size() || !IsWordChar(text[end]);
    if (left && right) hits.push_back(pos);
  }
  return hits;
}

bool NegatedBefore(std::string_view clause, std::size_t pos) {
  std::string word;
  auto is_cue = [](const std::string& w) {
    if (w.size() >= 3 && w.compare(w.size() - 3, 3, "n't") == 0) return true;
    for (auto cue : kNegationCues) {
      if (w == cue) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i <= pos && i < clause.size(); ++i) {
    const char c = clause[i];
    if (IsWordChar(c) || c == '\'') {
      word.push_back(c);
    } else {
      if (is_cue(word)) return true;
      word.clear();
    }
  }
  return false;
}

// Terms mentioned without a preceding negation cue in their clause.
std::vector<std::string_view> AffirmedTerms(std::string_view text) {
  std::vector<std::string_view> affirmed;
  for (const auto& clause : Clauses(Normalize(text))) {
    for (auto term : kSymptomLexicon) {
      for (std::size_t pos : FindWord(clause, term)) {
        if (!NegatedBefore(clause, pos)) {
          affirmed.push_back(term);
          break;
        }
      }
    }
  }
  return affirmed;
}

std::string RoleBreak(std::string_view text) {
  if (!FindWord(text, "AI").empty()) return "AI";
  if (!FindWord(Normalize(text), "language model").empty()) return "language model";
  return "";
}

FidelityVerdict CheckConversation(const Conversation& conv, std::string_view label,
                                  const std::vector<std::string_view>& supported) {
  for (const auto& turn : conv.turns) {
    if (turn.speaker != Speaker::kPatient) continue;
    const std::string where =
        std::string(label) + " turn " + std::to_string(turn.index);
    if (auto broken = RoleBreak(turn.text); !broken.empty()) {
      return {Validation::kPatientViolation, where + ": patient breaks role (\"" + broken + "\")"};
    }
    for (auto term : AffirmedTerms(turn.text)) {
      bool ok = false;
      for (auto s : supported) ok = ok || s == term;
      if (!ok) {
        return {Validation::kPatientViolation,
                where + ": patient reports \"" + std::string(term) +
                    "\", which the vignette does not support"};
      }
    }
  }
  return {Validation::kValid, ""};
}

}  // namespace

FidelityValidator DefaultFidelityValidator() {
  return [](const DialogueRun& run, const Vignette& vignette) -> FidelityVerdict {
    const std::string profile = vignette.overview + "\n" + vignette.primary_symptoms + "\n" +
                                vignette.secondary_symptoms + "\n" + vignette.key_vitals;
    const std::vector<std::string_view> supported = AffirmedTerms(profile);

    FidelityVerdict verdict = CheckConversation(run.conversation_1, "conversation_1", supported);
    for (std::size_t i = 0; verdict.status == Validation::kValid &&
                            i < run.intermediate_conversations.size();
         ++i) {
      verdict = CheckConversation(run.intermediate_conversations[i],
                                  "conversation_" + std::to_string(i + 2), supported);
    }
    if (verdict.status == Validation::kValid) {
      verdict = CheckConversation(
          run.conversation_2,
          "conversation_" + std::to_string(run.intermediate_conversations.size() + 2),
          supported);
    }
    return verdict;
  };
}

}  // namespace pcc
