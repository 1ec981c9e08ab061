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

#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "pcc/agents.h"
#include "pcc/analysis.h"
#include "pcc/assignment.h"
#include "pcc/bradley_terry.h"
#include "pcc/corpus.h"
#include "pcc/dialogue_engine.h"
#include "pcc/scripted_backend.h"

namespace pcc {
namespace {

const std::vector<std::string> kItems = {"best_practices", "doctor", "empathetic", "none"};

void BM_FitBradleyTerry(benchmark::State& state) {
  const auto pairs = SimulateComparisons(
      {{"best_practices", 0.5}, {"doctor", 0.25}, {"empathetic", 0.75}, {"none", 0.0}},
      static_cast<int>(state.range(0)), 1);
  const auto counts = Tally(pairs, Dimension::kHolistic, kItems);
  for (auto _ : state) benchmark::DoNotOptimize(FitBradleyTerry(counts, "none"));
}
BENCHMARK(BM_FitBradleyTerry)->Arg(60)->Arg(400)->Arg(4000);

void BM_AssignTasks(benchmark::State& state) {
  std::vector<SuiteEntry> suite;
  for (const std::string v : {"vignette_1", "vignette_2"}) {
    for (const auto& c : kItems) suite.push_back({v + "__" + c, v, c});
  }
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(AssignTasks("P", suite, kItems, seed++));
}
BENCHMARK(BM_AssignTasks);

void BM_RenderPrompts(benchmark::State& state) {
  const Corpus corpus = LoadCorpus(std::string(PCC_SOURCE_DIR) + "/data/corpus");
  for (auto _ : state) {
    for (const auto& c : corpus.constitutions) {
      benchmark::DoNotOptimize(RenderSystemPrompt(AgentRole::kCritic, nullptr, &c));
    }
    benchmark::DoNotOptimize(RenderSystemPrompt(AgentRole::kPatient, &corpus.vignettes[0], nullptr));
  }
}
BENCHMARK(BM_RenderPrompts);

void BM_GenerateScriptedSuite(benchmark::State& state) {
  const std::string dir = PCC_SOURCE_DIR;
  const Corpus corpus = LoadCorpus(dir + "/data/corpus");
  for (auto _ : state) {
    ScriptedBackend backend = ScriptedBackend::FromFile(dir + "/data/fixtures/demo.script");
    EngineContext ctx{&backend, {}, {}};
    benchmark::DoNotOptimize(GenerateSuite(corpus, ctx, DefaultFidelityValidator()));
  }
}
BENCHMARK(BM_GenerateScriptedSuite);

}  // namespace
}  // namespace pcc

BENCHMARK_MAIN();
