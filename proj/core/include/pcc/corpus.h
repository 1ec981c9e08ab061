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

#ifndef PCC_CORPUS_H_
#define PCC_CORPUS_H_

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcc {

// Structured patient profile that conditions the patient agent. All fields
// are free text; "Information not specified." is a legitimate value.
struct Vignette {
  std::string id;
  std::string demographics;
  std::string overview;
  std::string primary_symptoms;
  std::string secondary_symptoms;
  std::string medical_history;
  std::string social_history;
  std::string key_vitals;

  bool operator==(const Vignette&) const = default;
};

// Critique guidelines handed to the critic agent. `critic_guideline_text` is
// the full critic instruction as shipped; `feedback_word_limit` is parsed from
// its closing "Give your feedback in N words or less." sentence.
struct Constitution {
  std::string id;
  std::string title;
  std::string critic_guideline_text;
  int feedback_word_limit = 100;

  bool operator==(const Constitution&) const = default;
};

enum class Dimension {
  kFosteringRelationship,
  kGatheringInformation,
  kProvidingInformation,
  kDecisionMaking,
  kEnablingBehaviour,
  kRespondingToEmotions,
  kHolistic,
};

inline constexpr std::array<Dimension, 7> kAllDimensions = {
    Dimension::kFosteringRelationship, Dimension::kGatheringInformation,
    Dimension::kProvidingInformation,  Dimension::kDecisionMaking,
    Dimension::kEnablingBehaviour,     Dimension::kRespondingToEmotions,
    Dimension::kHolistic,
};

std::string_view DimensionId(Dimension d);
std::optional<Dimension> ParseDimension(std::string_view id);

struct EvalDimension {
  Dimension id;
  std::string label;
  std::string question_text;

  bool operator==(const EvalDimension&) const = default;
};

struct ComprehensionQuestion {
  std::string dialogue_ref;  // run id, e.g. "vignette_1__none"
  std::string prompt;
  std::vector<std::string> options;
  int correct_index = 0;

  bool operator==(const ComprehensionQuestion&) const = default;
};

// Immutable after load. Vignettes, constitutions and questions are sorted by
// id; dimensions follow kAllDimensions order.
struct Corpus {
  std::vector<Vignette> vignettes;
  std::vector<Constitution> constitutions;
  std::vector<EvalDimension> dimensions;
  std::vector<ComprehensionQuestion> questions;

  const Vignette* FindVignette(std::string_view id) const;
  const Constitution* FindConstitution(std::string_view id) const;
  const ComprehensionQuestion* FindQuestion(std::string_view run_id) const;
  const EvalDimension* FindDimension(Dimension d) const;

  bool operator==(const Corpus&) const = default;
};

class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::filesystem::path file, std::string field,
              const std::string& message);

  const std::filesystem::path& file() const { return file_; }
  const std::string& field() const { return field_; }

 private:
  std::filesystem::path file_;
  std::string field_;
};

// Reads the directory layout
//   constitutions/<id>.txt    first line title, remainder guideline text
//   vignettes/<id>.txt        "Label: value" sections
//   dimensions.tsv            id, label, question
//   comprehension/<run>.tsv   prompt, correct_index, option...
// and validates it. Throws CorpusError naming the offending file and field.
Corpus LoadCorpus(const std::filesystem::path& dir);

// Writes `corpus` in the layout LoadCorpus reads. Existing files with the same
// names are overwritten.
void SaveCorpus(const Corpus& corpus, const std::filesystem::path& dir);

// Digest of the corpus files on disk (see DirectoryDigest).
std::string CorpusDigest(const std::filesystem::path& dir);

// "Give your feedback in <limit> words or less."
std::string FeedbackLimitSentence(int limit);

struct GuidelineLimits {
  int max_words = 1000;
};

// Lint for constitution text. Never throws, never mutates.
std::vector<std::string> ValidateConstitutionText(
    const Constitution& c, const GuidelineLimits& limits = {});

}  // namespace pcc

#endif  // PCC_CORPUS_H_
