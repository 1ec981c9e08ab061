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

#ifndef PCC_TESTS_TESTING_FIXTURES_H_
#define PCC_TESTS_TESTING_FIXTURES_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "pcc/corpus.h"
#include "pcc/dialogue_engine.h"
#include "spdlog/sinks/ringbuffer_sink.h"

namespace pcc::testing {

std::filesystem::path SourceDir();
std::filesystem::path ShippedCorpusDir();
std::filesystem::path DemoScriptPath();

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Copies everything the library logs while alive.
class LogCapture {
 public:
  LogCapture();
  ~LogCapture();
  std::vector<std::string> Lines() const;
  bool Contains(const std::string& needle) const;

 private:
  std::shared_ptr<spdlog::sinks::ringbuffer_sink_mt> sink_;
};

// A two-exchange first conversation and a one-exchange second conversation
// for every cell of the shipped corpus, with clean patient lines.
std::string MinimalScript();

// Runs generated from MinimalScript over the shipped corpus.
std::vector<DialogueRun> MinimalSuite();

}  // namespace pcc::testing

#endif  // PCC_TESTS_TESTING_FIXTURES_H_
