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

#ifndef PCC_SUITE_IO_H_
#define PCC_SUITE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pcc/backend.h"
#include "pcc/dialogue_engine.h"

namespace pcc {

struct RunManifest {
  std::vector<std::string> run_ids;
  std::string corpus_path;
  std::string corpus_digest;
  std::string config_digest;
  EngineConfig engine_config;
  std::string backend_mode;
  std::string created_at;  // ISO-8601 UTC
};

// Canonical pretty-printed JSON (2-space indent, trailing newline). Output is
// a pure function of the run, so identical runs give identical bytes.
std::string RunToJson(const DialogueRun& run);
DialogueRun RunFromJson(std::string_view json);

std::string ManifestToJson(const RunManifest& manifest);
RunManifest ManifestFromJson(std::string_view json);

// Digest over the engine settings and the backend settings that affect
// output (never credentials).
std::string ConfigDigest(const EngineConfig& engine,
                         const BackendConfig& backend);

std::string NowIso8601();

// Writes runs/<run_id>.json for every run plus manifest.json into `out_dir`.
void WriteSuite(const std::filesystem::path& out_dir,
                const std::vector<DialogueRun>& runs,
                const RunManifest& manifest);

struct Suite {
  RunManifest manifest;
  std::vector<DialogueRun> runs;
};

// Reads manifest.json and every listed run file; throws std::runtime_error
// when a listed run is missing, unreadable, or inconsistent.
Suite ReadSuite(const std::filesystem::path& dir);

}  // namespace pcc

#endif  // PCC_SUITE_IO_H_
