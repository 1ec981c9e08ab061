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

#include "fixtures.h"

#include <algorithm>
#include <atomic>
#include <chrono>

#include "pcc/logging.h"
#include "pcc/scripted_backend.h"

namespace pcc::testing {

std::filesystem::path SourceDir() { return PCC_SOURCE_DIR; }
std::filesystem::path ShippedCorpusDir() { return SourceDir() / "data" / "corpus"; }
std::filesystem::path DemoScriptPath() { return SourceDir() / "data" / "fixtures" / "demo.script"; }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  path_ = std::filesystem::temp_directory_path() /
          ("pcc_test_" + std::to_string(stamp) + "_" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

LogCapture::LogCapture() : sink_(std::make_shared<spdlog::sinks::ringbuffer_sink_mt>(256)) {
  Logger()->sinks().push_back(sink_);
}

LogCapture::~LogCapture() {
  auto& sinks = Logger()->sinks();
  sinks.erase(std::remove(sinks.begin(), sinks.end(), sink_), sinks.end());
}

std::vector<std::string> LogCapture::Lines() const { return sink_->last_formatted(); }

bool LogCapture::Contains(const std::string& needle) const {
  for (const auto& line : Lines()) {
    if (line.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::string MinimalScript() {
  return "doctor\t0\tHello, how can I help you today?\n"
         "doctor\t2\tI see. Anything else?\n"
         "doctor\t6\tThanks. Let us look into it together.\n"
         "patient\t1\tI came in about something I noticed recently.\n"
         "patient\t3\tNo, nothing else.\n"
         "patient\t5\tI would like to know more.\n"
         "patient\t7\tThank you.\n"
         "moderator\t1\tCONTINUE\n"
         "moderator\t3\tSTOP\n"
         "moderator\t5\tCONTINUE\n"
         "moderator\t7\tSTOP\n"
         "critic\t0\tAsk more open questions.\n";
}

std::vector<DialogueRun> MinimalSuite() {
  const Corpus corpus = LoadCorpus(ShippedCorpusDir());
  ScriptedBackend backend = ScriptedBackend::FromString(MinimalScript());
  EngineContext ctx{&backend, {}, {}};
  return GenerateSuite(corpus, ctx, DefaultFidelityValidator());
}

}  // namespace pcc::testing
