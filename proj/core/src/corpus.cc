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

#include "pcc/corpus.h"

#include <algorithm>
#include <array>
#include <map>
#include <regex>
#include <set>

#include "pcc/digest.h"
#include "pcc/text.h"

namespace pcc {
namespace {

namespace fs = std::filesystem;

constexpr std::array<std::string_view, 7> kDimensionIds = {
    "fostering_relationship", "gathering_information", "providing_information",
    "decision_making",        "enabling_behaviour",    "responding_to_emotions",
    "holistic",
};

// Vignette section labels, in the order the patient prompt lists them.
struct VignetteField {
  std::string_view label;
  std::string Vignette::*member;
};

constexpr std::array<VignetteField, 7> kVignetteFields = {{
    {"Demographics", &Vignette::demographics},
    {"Overview", &Vignette::overview},
    {"Primary Symptoms", &Vignette::primary_symptoms},
    {"Secondary Symptoms", &Vignette::secondary_symptoms},
    {"Medical History", &Vignette::medical_history},
    {"Social History", &Vignette::social_history},
    {"Key Review of Vitals", &Vignette::key_vitals},
}};

std::string ReadCorpusFile(const fs::path& p) {
  try {
    return ReadFile(p.string());
  } catch (const std::exception& e) {
    throw CorpusError(p, "", e.what());
  }
}

std::vector<fs::path> ListFiles(const fs::path& dir, std::string_view ext) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Lines(std::string_view text) {
  auto lines = Split(text, '\n');
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
  }
  return lines;
}

// Ids are lowercased file stems restricted to [a-z0-9_], so "Doctor.txt" and
// "doctor.txt" name the same constitution.
std::string IdFromFile(const fs::path& file) {
  std::string id = ToLower(file.stem().string());
  if (id.empty() || id.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_") !=
                        std::string::npos) {
    throw CorpusError(file, "id", "id must match [a-z0-9_]+: '" + id + "'");
  }
  return id;
}

int ParseWordLimit(std::string_view text) {
  static const std::regex kLimit(R"(Give your feedback in (\d+) words or less\.)");
  int limit = 0;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kLimit);
       it != std::sregex_iterator(); ++it) {
    limit = std::stoi((*it)[1].str());
  }
  return limit;
}

Constitution ParseConstitution(const fs::path& file) {
  const std::string raw = ReadCorpusFile(file);
  Constitution c;
  c.id = IdFromFile(file);
  const auto nl = raw.find('\n');
  c.title = std::string(Trim(raw.substr(0, nl)));
  if (c.title.empty()) throw CorpusError(file, "title", "missing title line");
  c.critic_guideline_text =
      nl == std::string::npos ? "" : std::string(Trim(raw.substr(nl + 1)));
  if (c.critic_guideline_text.empty()) {
    throw CorpusError(file, "critic_guideline_text", "empty guideline text");
  }
  const int limit = ParseWordLimit(c.critic_guideline_text);
  c.feedback_word_limit = limit > 0 ? limit : 100;
  return c;
}

Vignette ParseVignette(const fs::path& file) {
  Vignette v;
  v.id = IdFromFile(file);
  std::set<std::string_view> seen;
  std::string* current = nullptr;
  for (const auto& line : Lines(ReadCorpusFile(file))) {
    const VignetteField* match = nullptr;
    for (const auto& f : kVignetteFields) {
      if (StartsWith(line, f.label) && line.size() > f.label.size() &&
          Trim(std::string_view(line).substr(f.label.size())).substr(0, 1) == ":") {
        match = &f;
        break;
      }
    }
    if (match != nullptr) {
      if (!seen.insert(match->label).second) {
        throw CorpusError(file, std::string(match->label), "duplicate section");
      }
      current = &(v.*(match->member));
      const auto colon = line.find(':');
      *current = std::string(Trim(std::string_view(line).substr(colon + 1)));
      continue;
    }
    if (Trim(line).empty()) continue;
    if (current == nullptr) {
      throw CorpusError(file, "", "text before the first section label: " + line);
    }
    *current += "\n";
    *current += Trim(line);
  }
  for (const auto& f : kVignetteFields) {
    if ((v.*(f.member)).empty()) {
      throw CorpusError(file, std::string(f.label), "missing or empty section");
    }
  }
  return v;
}

std::vector<EvalDimension> ParseDimensions(const fs::path& file) {
  if (!fs::exists(file)) throw CorpusError(file, "", "missing dimensions file");
  std::vector<EvalDimension> dims;
  std::set<Dimension> seen;
  bool header = true;
  for (const auto& line : Lines(ReadCorpusFile(file))) {
    if (Trim(line).empty()) continue;
    if (header) {
      header = false;
      if (StartsWith(line, "id\t")) continue;
    }
    const auto cols = Split(line, '\t');
    if (cols.size() != 3) {
      throw CorpusError(file, "columns", "expected id<TAB>label<TAB>question: " + line);
    }
    const auto id = ParseDimension(cols[0]);
    if (!id) throw CorpusError(file, "id", "unknown dimension '" + cols[0] + "'");
    if (!seen.insert(*id).second) {
      throw CorpusError(file, "id", "duplicate dimension id '" + cols[0] + "'");
    }
    if (Trim(cols[2]).empty()) throw CorpusError(file, "question", "empty question for " + cols[0]);
    dims.push_back({*id, cols[1], cols[2]});
  }
  if (dims.size() != kAllDimensions.size()) {
    throw CorpusError(file, "id", "expected " + std::to_string(kAllDimensions.size()) +
                                      " dimensions, found " + std::to_string(dims.size()));
  }
  std::sort(dims.begin(), dims.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return dims;
}

ComprehensionQuestion ParseQuestion(const fs::path& file) {
  ComprehensionQuestion q;
  q.dialogue_ref = file.stem().string();
  int found = 0;
  for (const auto& line : Lines(ReadCorpusFile(file))) {
    if (Trim(line).empty() || StartsWith(line, "#")) continue;
    if (++found > 1) throw CorpusError(file, "", "more than one question");
    const auto cols = Split(line, '\t');
    if (cols.size() < 4) {
      throw CorpusError(file, "options", "need prompt, correct_index and at least two options");
    }
    q.prompt = cols[0];
    try {
      std::size_t used = 0;
      q.correct_index = std::stoi(cols[1], &used);
      if (used != cols[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw CorpusError(file, "correct_index", "not an integer: '" + cols[1] + "'");
    }
    q.options.assign(cols.begin() + 2, cols.end());
  }
  if (found == 0) throw CorpusError(file, "", "no question");
  if (q.correct_index < 0 ||
      q.correct_index >= static_cast<int>(q.options.size())) {
    throw CorpusError(file, "correct_index", "out of range");
  }
  return q;
}

template <typename T>
void CheckUnique(const std::vector<T>& items, const fs::path& dir,
                 std::string_view what) {
  std::set<std::string> ids;
  for (const auto& item : items) {
    if (!ids.insert(item.id).second) {
      throw CorpusError(dir, "id", "duplicate " + std::string(what) + " id '" + item.id + "'");
    }
  }
}

}  // namespace

CorpusError::CorpusError(fs::path file, std::string field,
                         const std::string& message)
    : std::runtime_error(file.string() + (field.empty() ? "" : " [" + field + "]") +
                         ": " + message),
      file_(std::move(file)),
      field_(std::move(field)) {}

std::string_view DimensionId(Dimension d) {
  return kDimensionIds[static_cast<std::size_t>(d)];
}

std::optional<Dimension> ParseDimension(std::string_view id) {
  for (std::size_t i = 0; i < kDimensionIds.size(); ++i) {
    if (kDimensionIds[i] == id) return static_cast<Dimension>(i);
  }
  return std::nullopt;
}

const Vignette* Corpus::FindVignette(std::string_view id) const {
  for (const auto& v : vignettes) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

const Constitution* Corpus::FindConstitution(std::string_view id) const {
  for (const auto& c : constitutions) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const ComprehensionQuestion* Corpus::FindQuestion(std::string_view run_id) const {
  for (const auto& q : questions) {
    if (q.dialogue_ref == run_id) return &q;
  }
  return nullptr;
}

const EvalDimension* Corpus::FindDimension(Dimension d) const {
  for (const auto& dim : dimensions) {
    if (dim.id == d) return &dim;
  }
  return nullptr;
}

Corpus LoadCorpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw CorpusError(dir, "", "corpus directory does not exist");
  }
  Corpus corpus;

  for (const auto& f : ListFiles(dir / "constitutions", ".txt")) {
    corpus.constitutions.push_back(ParseConstitution(f));
  }
  if (corpus.constitutions.empty()) {
    throw CorpusError(dir / "constitutions", "", "no constitutions found");
  }
  CheckUnique(corpus.constitutions, dir / "constitutions", "constitution");
  std::sort(corpus.constitutions.begin(), corpus.constitutions.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  for (const auto& f : ListFiles(dir / "vignettes", ".txt")) {
    corpus.vignettes.push_back(ParseVignette(f));
  }
  if (corpus.vignettes.empty()) {
    throw CorpusError(dir / "vignettes", "", "no vignettes found");
  }
  CheckUnique(corpus.vignettes, dir / "vignettes", "vignette");
  std::sort(corpus.vignettes.begin(), corpus.vignettes.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  corpus.dimensions = ParseDimensions(dir / "dimensions.tsv");

  for (const auto& f : ListFiles(dir / "comprehension", ".tsv")) {
    corpus.questions.push_back(ParseQuestion(f));
  }
  return corpus;
}

void SaveCorpus(const Corpus& corpus, const fs::path& dir) {
  fs::create_directories(dir / "constitutions");
  fs::create_directories(dir / "vignettes");
  fs::create_directories(dir / "comprehension");
  for (const auto& c : corpus.constitutions) {
    WriteFile((dir / "constitutions" / (c.id + ".txt")).string(),
              c.title + "\n" + c.critic_guideline_text + "\n");
  }
  for (const auto& v : corpus.vignettes) {
    std::string body;
    for (const auto& f : kVignetteFields) {
      body += std::string(f.label) + ": " + v.*(f.member) + "\n";
    }
    WriteFile((dir / "vignettes" / (v.id + ".txt")).string(), body);
  }
  std::string dims = "id\tlabel\tquestion\n";
  for (const auto& d : corpus.dimensions) {
    dims += std::string(DimensionId(d.id)) + "\t" + d.label + "\t" + d.question_text + "\n";
  }
  WriteFile((dir / "dimensions.tsv").string(), dims);
  for (const auto& q : corpus.questions) {
    std::string line = q.prompt + "\t" + std::to_string(q.correct_index);
    for (const auto& o : q.options) line += "\t" + o;
    WriteFile((dir / "comprehension" / (q.dialogue_ref + ".tsv")).string(), line + "\n");
  }
}

std::string CorpusDigest(const fs::path& dir) { return DirectoryDigest(dir); }

std::string FeedbackLimitSentence(int limit) {
  return "Give your feedback in " + std::to_string(limit) + " words or less.";
}

std::vector<std::string> ValidateConstitutionText(const Constitution& c,
                                                  const GuidelineLimits& limits) {
  std::vector<std::string> warnings;
  const std::string_view text = Trim(c.critic_guideline_text);
  if (text.empty()) {
    warnings.push_back("empty guideline");
    return warnings;
  }
  const std::string sentence = FeedbackLimitSentence(c.feedback_word_limit);
  if (text.find(sentence) == std::string_view::npos) {
    warnings.push_back("missing word-limit sentence \"" + sentence + "\"");
  } else if (!EndsWith(text, sentence)) {
    warnings.push_back("word-limit sentence is not the closing sentence");
  }
  const int words = CountWords(text);
  if (words > limits.max_words) {
    warnings.push_back("guideline has " + std::to_string(words) +
                       " words, above the configured " +
                       std::to_string(limits.max_words));
  }
  return warnings;
}

}  // namespace pcc
