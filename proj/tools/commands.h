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

#ifndef PCC_TOOLS_COMMANDS_H_
#define PCC_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcc/backend.h"
#include "pcc/dialogue_engine.h"
#include "pcc/http_api.h"

namespace pcc::cli {

// A failure to report to the user; `exit_code` 2 marks invalid usage.
class CommandError : public std::runtime_error {
 public:
  CommandError(const std::string& message, int exit_code = 1)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

struct GenerateOptions {
  std::filesystem::path corpus = "data/corpus";
  std::filesystem::path out = "suite";
  BackendConfig backend;
  EngineConfig engine;
};

// Writes runs/<id>.json for every cell and manifest.json into `out`.
void CmdGenerate(const GenerateOptions& options);

struct ServeOptions {
  std::filesystem::path suite = "suite";
  std::filesystem::path corpus;   // empty: the path recorded in the manifest
  std::filesystem::path records;  // empty: <suite>/records.jsonl
  std::string bind = "127.0.0.1:8080";
  std::string admin_token_env = "PCC_ADMIN_TOKEN";
  std::uint64_t seed = 0;
  bool cross_vignette = false;
};

// Serves the rating API until SIGINT/SIGTERM or until `on_ready` stops the
// server. `on_ready` receives the bound port.
void CmdServe(const ServeOptions& options,
              const std::function<void(RatingServer&, int)>& on_ready = {});

struct AnalyzeOptions {
  std::filesystem::path records = "records.jsonl";
  std::filesystem::path out = "results";
  std::string reference = "none";
};

// Writes results.json, plot.tsv, summary.txt and exclusions.tsv into `out`.
void CmdAnalyze(const AnalyzeOptions& options);

struct SynthOptions {
  std::filesystem::path out = "records.jsonl";
  std::vector<std::pair<std::string, double>> beta = {
      {"best_practices", 0.5}, {"doctor", 0.25}, {"empathetic", 0.75}, {"none", 0.0}};
  std::vector<std::string> vignettes = {"vignette_1", "vignette_2"};
  int participants_per_matching = 400;
  std::uint64_t seed = 0;
};

// Writes a record log of simulated raters: each participant rates one
// perfect matching of the four items, choosing on every dimension with
// Bradley-Terry probabilities from `beta`, and passes every comprehension
// check.
void CmdSynthRecords(const SynthOptions& options);

// Parses argv and dispatches. Returns the process exit code; diagnostics go
// to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& err);

}  // namespace pcc::cli

#endif  // PCC_TOOLS_COMMANDS_H_
