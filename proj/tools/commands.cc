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

#include "commands.h"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <ostream>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "pcc/analysis.h"
#include "pcc/corpus.h"
#include "pcc/exclusions.h"
#include "pcc/logging.h"
#include "pcc/rating_service.h"
#include "pcc/record_log.h"
#include "pcc/rng.h"
#include "pcc/suite_io.h"
#include "pcc/text.h"

namespace pcc::cli {
namespace fs = std::filesystem;
namespace {

std::pair<std::string, int> ParseBind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw CommandError("--bind expects host:port", 2);
  int port = -1;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
  }
  if (port < 0 || port > 65535) throw CommandError("bad port in --bind " + bind, 2);
  return {bind.substr(0, colon), port};
}

std::string EventCountsLine(const EventCounts& c) {
  return std::to_string(c.enrolled) + " enrolled, " + std::to_string(c.assigned) +
         " assigned, " + std::to_string(c.responded) + " responses";
}

}  // namespace

void CmdGenerate(const GenerateOptions& options) {
  try {
    options.engine.Validate();
    options.backend.Validate();
  } catch (const std::invalid_argument& e) {
    throw CommandError(e.what(), 2);
  }
  if (!fs::is_directory(options.corpus)) {
    throw CommandError("corpus directory not found: " + options.corpus.string());
  }
  const Corpus corpus = LoadCorpus(options.corpus);
  for (const auto& c : corpus.constitutions) {
    for (const auto& warning : ValidateConstitutionText(c)) {
      Logger()->warn("constitution {}: {}", c.id, warning);
    }
  }

  auto backend = MakeBackend(options.backend);
  EngineContext ctx{backend.get(), RetryPolicy::FromConfig(options.backend), options.engine};
  Logger()->info("generating {} cells with the {} backend",
                 corpus.vignettes.size() * corpus.constitutions.size(), backend->mode());
  const std::vector<DialogueRun> runs = GenerateSuite(corpus, ctx, DefaultFidelityValidator());

  RunManifest manifest;
  for (const auto& run : runs) manifest.run_ids.push_back(run.run_id);
  manifest.corpus_path = fs::absolute(options.corpus).lexically_normal().string();
  manifest.corpus_digest = CorpusDigest(options.corpus);
  manifest.config_digest = ConfigDigest(options.engine, options.backend);
  manifest.engine_config = options.engine;
  manifest.backend_mode = std::string(ModeName(options.backend.mode));
  manifest.created_at = NowIso8601();

  if (fs::is_directory(options.out / "runs")) {
    for (const auto& entry : fs::directory_iterator(options.out / "runs")) {
      if (entry.path().extension() == ".json") fs::remove(entry.path());
    }
  }
  WriteSuite(options.out, runs, manifest);
  Logger()->info("wrote {} runs and manifest.json to {}", runs.size(), options.out.string());
}

void CmdServe(const ServeOptions& options,
              const std::function<void(RatingServer&, int)>& on_ready) {
  Suite suite;
  try {
    suite = ReadSuite(options.suite);
  } catch (const std::exception& e) {
    throw CommandError("cannot load suite: " + std::string(e.what()));
  }
  const fs::path corpus_path =
      options.corpus.empty() ? fs::path(suite.manifest.corpus_path) : options.corpus;
  if (!fs::is_directory(corpus_path)) {
    throw CommandError("corpus directory not found: " + corpus_path.string());
  }
  if (CorpusDigest(corpus_path) != suite.manifest.corpus_digest) {
    throw CommandError("corpus at " + corpus_path.string() +
                       " does not match the digest in the suite manifest; refusing to serve");
  }
  const Corpus corpus = LoadCorpus(corpus_path);
  const fs::path records =
      options.records.empty() ? options.suite / "records.jsonl" : options.records;
  const auto [host, port] = ParseBind(options.bind);

  std::string token;
  if (const char* value = std::getenv(options.admin_token_env.c_str())) token = value;
  if (token.empty()) {
    Logger()->warn("${} is not set; /admin/export will reject every request",
                   options.admin_token_env);
  }

  ServiceOptions service_options;
  service_options.seed = options.seed;
  service_options.assignment.same_vignette_pairs = !options.cross_vignette;
  RatingService service(std::move(suite.runs), corpus, records, service_options);
  RatingServer server(service, token);

  int bound = port;
  if (port == 0) {
    bound = server.BindToAnyPort(host);
  } else if (!server.Bind(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw CommandError("cannot bind " + options.bind + " (address in use?)");
  Logger()->info("serving on {}:{} with seed {}, records in {} ({})", host, bound, options.seed,
                 records.string(), EventCountsLine(service.Counts()));

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  std::atomic<bool> done{false};
  std::thread watcher([&] {
    const timespec wait{0, 200'000'000};
    while (!done) {
      if (sigtimedwait(&signals, nullptr, &wait) > 0) {
        Logger()->info("interrupted; shutting down");
        server.Stop();
      }
    }
  });
  std::exception_ptr ready_error;
  std::thread ready;
  if (on_ready) {
    ready = std::thread([&] {
      while (!server.IsRunning() && !done) std::this_thread::sleep_for(std::chrono::milliseconds(5));
      try {
        on_ready(server, bound);
      } catch (...) {
        ready_error = std::current_exception();
        server.Stop();
      }
    });
  }

  server.Listen();
  done = true;
  if (ready.joinable()) ready.join();
  watcher.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);

  Logger()->info("stopped: {}", EventCountsLine(service.Counts()));
  if (ready_error) std::rethrow_exception(ready_error);
}

void CmdAnalyze(const AnalyzeOptions& options) {
  if (!fs::exists(options.records)) {
    throw CommandError("record log not found: " + options.records.string());
  }
  const RecordSet records = ReplayRecords(options.records);
  if (records.event_count == 0) {
    throw CommandError("record log is empty: " + options.records.string());
  }
  const ExclusionOutcome exclusions =
      ApplyExclusions(records.participants, records.tasks, records.responses);
  for (const auto& r : exclusions.reports) {
    Logger()->info("excluded {} ({}: {})", r.participant_id, RuleName(r.rule), r.detail);
  }
  if (exclusions.included.empty()) throw CommandError("no included participants");

  std::set<std::string> items;
  for (const auto& t : records.tasks) {
    items.insert(t.left_constitution);
    items.insert(t.right_constitution);
  }
  if (!items.contains(options.reference)) {
    throw CommandError("reference \"" + options.reference + "\" does not appear in the records");
  }
  const ComparisonsByDimension comparisons =
      ExtractComparisons(records.tasks, records.responses, exclusions.included);
  const AnalysisResults results = FitAllDimensions(
      comparisons, std::vector<std::string>(items.begin(), items.end()), options.reference);

  std::string excluded = "participant_id\trule\tdetail\n";
  for (const auto& r : exclusions.reports) {
    excluded += r.participant_id + "\t" + std::string(RuleName(r.rule)) + "\t" + r.detail + "\n";
  }
  fs::create_directories(options.out);
  WriteFile((options.out / "results.json").string(), ResultsToJson(results));
  WriteFile((options.out / "plot.tsv").string(), ResultsToPlotTsv(results));
  WriteFile((options.out / "summary.txt").string(), ResultsSummary(results));
  WriteFile((options.out / "exclusions.tsv").string(), excluded);

  int fitted = 0;
  for (const auto& d : results.dimensions) {
    if (d.status == DimensionStatus::kFitted) {
      ++fitted;
    } else if (d.status == DimensionStatus::kFailed) {
      Logger()->warn("{}: {}", DimensionId(d.dimension), d.error);
    }
  }
  Logger()->info("{} of {} participants included; {} dimensions fitted; results in {}",
                 exclusions.included.size(), exclusions.statuses.size(), fitted,
                 options.out.string());
}

void CmdSynthRecords(const SynthOptions& options) {
  std::vector<std::pair<std::string, double>> beta = options.beta;
  std::sort(beta.begin(), beta.end());
  if (beta.size() != 4) throw CommandError("synth-records needs exactly four items", 2);
  if (options.vignettes.empty()) throw CommandError("at least one vignette is required", 2);
  if (options.participants_per_matching < 1) {
    throw CommandError("participants per matching must be >= 1", 2);
  }

  if (options.out.has_parent_path()) fs::create_directories(options.out.parent_path());
  fs::remove(options.out);
  RecordLog log(options.out);
  Rng rng(options.seed);
  const std::string stamp = "1970-01-01T00:00:00Z";
  int next_id = 1;
  for (std::size_t m = 0; m < kMatchings.size(); ++m) {
    for (int k = 0; k < options.participants_per_matching; ++k) {
      char id[16];
      std::snprintf(id, sizeof(id), "P%06d", next_id++);
      const std::string pid = id;
      const std::string& vignette = options.vignettes[k % options.vignettes.size()];
      log.Append(EnrolledEvent{{pid, stamp, ParticipantStatus::kActive}});

      AssignedEvent assigned;
      for (int t = 0; t < 2; ++t) {
        auto [i, j] = kMatchings[m][t];
        ComparisonTask task;
        task.task_id = pid + "-t" + std::to_string(t + 1);
        task.participant_id = pid;
        task.position = t == 0 ? TaskPosition::kFirst : TaskPosition::kSecond;
        task.left_right_order_seed = rng();
        if (task.left_right_order_seed & 1) std::swap(i, j);
        task.left_constitution = beta[i].first;
        task.right_constitution = beta[j].first;
        task.left_vignette = task.right_vignette = vignette;
        task.left_run_id = RunId(vignette, beta[i].first);
        task.right_run_id = RunId(vignette, beta[j].first);
        assigned.tasks.push_back(std::move(task));
      }
      log.Append(assigned);

      for (const auto& task : assigned.tasks) {
        double b_left = 0.0;
        double b_right = 0.0;
        for (const auto& [name, value] : beta) {
          if (name == task.left_constitution) b_left = value;
          if (name == task.right_constitution) b_right = value;
        }
        const double p_left = 1.0 / (1.0 + std::exp(b_right - b_left));
        ComparisonResponse response;
        response.task_id = task.task_id;
        for (Dimension d : kAllDimensions) {
          response.choices[d] = UniformUnit(rng) < p_left ? Choice::kLeft : Choice::kRight;
        }
        response.comprehension_results = {true, true};
        response.submitted_at = stamp;
        log.Append(RespondedEvent{std::move(response), pid});
      }
    }
  }
  Logger()->info("wrote {} synthetic participants to {} (seed {})", next_id - 1,
                 options.out.string(), options.seed);
}

int RunCli(int argc, const char* const* argv, std::ostream& err) {
  CLI::App app{"Constitution-guided medical dialogue generation, rating and analysis"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags");
  app.require_subcommand(1);

  std::string corpus = "data/corpus";
  std::string backend = "scripted";
  std::string script;
  std::string endpoint;
  std::string model;
  std::string adapter = "generic";
  std::string api_key_env;
  double temperature = 1.0;
  int critic_rounds = 1;
  int max_turns = 20;
  int max_regenerations = 3;
  int parallel = 1;
  std::uint64_t seed = 0;
  std::string bind = "127.0.0.1:8080";
  std::string admin_token_env = "PCC_ADMIN_TOKEN";
  std::string out;
  std::string suite = "suite";
  std::string records;
  std::string reference = "none";
  bool cross_vignette = false;
  int per_matching = 400;
  std::vector<std::string> beta_specs;

  app.add_option("--corpus", corpus, "Corpus directory")->capture_default_str();
  app.add_option("--backend", backend, "Text backend")
      ->check(CLI::IsMember({"live", "scripted"}))
      ->capture_default_str();
  app.add_option("--script", script, "Script file for the scripted backend");
  app.add_option("--endpoint", endpoint, "HTTP endpoint for the live backend");
  app.add_option("--model", model, "Model name for the live backend");
  app.add_option("--adapter", adapter, "Live request format: generic, anthropic or openai")
      ->capture_default_str();
  app.add_option("--api-key-env", api_key_env, "Environment variable holding the API key");
  app.add_option("--temperature", temperature, "Sampling temperature")->capture_default_str();
  app.add_option("--critic-rounds", critic_rounds, "Critique rounds per run")
      ->capture_default_str();
  app.add_option("--max-turns", max_turns, "Turn cap per conversation")->capture_default_str();
  app.add_option("--max-regenerations", max_regenerations,
                 "Extra attempts for a run that fails validation")
      ->capture_default_str();
  app.add_option("--parallel", parallel, "Concurrent cells during generation")
      ->capture_default_str();
  app.add_option("--seed", seed, "Seed for assignment or simulation")->capture_default_str();
  app.add_option("--bind", bind, "host:port to serve on (port 0 picks one)")
      ->capture_default_str();
  app.add_option("--admin-token-env", admin_token_env,
                 "Environment variable holding the admin export token")
      ->capture_default_str();
  app.add_option("--out", out, "Output directory (generate, analyze) or file (synth-records)");
  app.add_option("--suite", suite, "Suite directory written by generate")->capture_default_str();
  app.add_option("--records", records, "Record log (JSON lines)");
  app.add_option("--reference", reference, "Item whose strength is fixed at 0")
      ->capture_default_str();
  app.add_flag("--cross-vignette", cross_vignette,
               "Draw each side's vignette independently when assigning tasks");
  app.add_option("--participants-per-matching", per_matching,
                 "Synthetic participants per perfect matching")
      ->capture_default_str();
  app.add_option("--beta", beta_specs, "Synthetic strengths as item=value");

  auto* generate = app.add_subcommand("generate", "Generate one dialogue per vignette x constitution");
  auto* serve = app.add_subcommand("serve", "Serve the rating API over a generated suite");
  auto* analyze = app.add_subcommand("analyze", "Fit Bradley-Terry strengths from a record log");
  auto* synth = app.add_subcommand("synth-records", "Write a simulated record log");
  for (auto* sub : {generate, serve, analyze, synth}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) {
      GenerateOptions o;
      o.corpus = corpus;
      if (!out.empty()) o.out = out;
      o.backend.mode = backend == "live" ? BackendConfig::Mode::kLive : BackendConfig::Mode::kScripted;
      o.backend.script_path = script;
      o.backend.endpoint = endpoint;
      o.backend.model_name = model;
      o.backend.adapter = adapter;
      o.backend.api_key_env = api_key_env;
      o.backend.temperature = temperature;
      o.engine.critic_rounds = critic_rounds;
      o.engine.max_turns_per_conversation = max_turns;
      o.engine.max_regenerations = max_regenerations;
      o.engine.parallelism = parallel;
      CmdGenerate(o);
    } else if (serve->parsed()) {
      ServeOptions o;
      o.suite = suite;
      if (app.count("--corpus") > 0) o.corpus = corpus;
      o.records = records;
      o.bind = bind;
      o.admin_token_env = admin_token_env;
      o.seed = seed;
      o.cross_vignette = cross_vignette;
      CmdServe(o);
    } else if (analyze->parsed()) {
      AnalyzeOptions o;
      if (!records.empty()) o.records = records;
      if (!out.empty()) o.out = out;
      o.reference = reference;
      CmdAnalyze(o);
    } else if (synth->parsed()) {
      SynthOptions o;
      if (!out.empty()) o.out = out;
      o.seed = seed;
      o.participants_per_matching = per_matching;
      if (!beta_specs.empty()) {
        o.beta.clear();
        for (const auto& spec : beta_specs) {
          const auto eq = spec.find('=');
          if (eq == std::string::npos) throw CommandError("--beta expects item=value", 2);
          try {
            o.beta.emplace_back(spec.substr(0, eq), std::stod(spec.substr(eq + 1)));
          } catch (const std::exception&) {
            throw CommandError("bad --beta value in " + spec, 2);
          }
        }
      }
      Logger()->info("seed {}", seed);
      CmdSynthRecords(o);
    }
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pcc::cli
