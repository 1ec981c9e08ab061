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

#include "pcc/backend.h"

#include <array>
#include <cmath>
#include <thread>

#include "pcc/digest.h"
#include "pcc/live_backend.h"
#include "pcc/logging.h"
#include "pcc/rng.h"
#include "pcc/scripted_backend.h"

namespace pcc {
namespace {

constexpr std::array<std::string_view, 4> kRoleNames = {"patient", "doctor",
                                                        "moderator", "critic"};

}  // namespace

std::string_view RoleName(AgentRole role) {
  return kRoleNames[static_cast<std::size_t>(role)];
}

std::optional<AgentRole> ParseRole(std::string_view name) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
    if (kRoleNames[i] == name) return static_cast<AgentRole>(i);
  }
  return std::nullopt;
}

bool PromptContext::IsAlternating() const {
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const Author expected = i % 2 == 0 ? Author::kUser : Author::kAssistant;
    if (messages[i].author != expected) return false;
  }
  return true;
}

PromptContext PromptContext::WithUser(std::string text) const {
  PromptContext out = *this;
  out.messages.push_back({Author::kUser, std::move(text)});
  return out;
}

std::string ContextDigest(const PromptContext& ctx) {
  // Length-prefixed fields.
  std::string buf;
  auto put = [&buf](std::string_view tag, std::string_view s) {
    buf += tag;
    buf += std::to_string(s.size());
    buf += ':';
    buf += s;
  };
  put("S", ctx.system_prompt);
  for (const auto& m : ctx.messages) {
    put(m.author == Author::kUser ? "U" : "A", m.text);
  }
  return Sha256Hex(buf);
}

void BackendConfig::Validate() const {
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
  if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
  if (timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
  if (initial_backoff.count() < 0) throw std::invalid_argument("initial_backoff must be >= 0");
  if (mode == Mode::kLive) {
    if (endpoint.empty()) throw std::invalid_argument("live backend requires an endpoint");
    if (model_name.empty()) throw std::invalid_argument("live backend requires a model name");
    if (adapter != "generic" && adapter != "anthropic" && adapter != "openai") {
      throw std::invalid_argument("unknown adapter '" + adapter + "'");
    }
  } else if (script_path.empty()) {
    throw std::invalid_argument("scripted backend requires a script path");
  }
}

std::string_view ModeName(BackendConfig::Mode mode) {
  return mode == BackendConfig::Mode::kLive ? "live" : "scripted";
}

RetryPolicy RetryPolicy::FromConfig(const BackendConfig& config) {
  RetryPolicy p;
  p.max_retries = config.max_retries;
  p.initial_backoff = config.initial_backoff;
  return p;
}

std::chrono::milliseconds RetryPolicy::Delay(int retry, std::uint64_t salt) const {
  Rng rng(MixSeed(salt, static_cast<std::uint64_t>(retry)));
  const double factor = 1.0 + jitter * (2.0 * UniformUnit(rng) - 1.0);
  const double base = static_cast<double>(initial_backoff.count()) * std::ldexp(1.0, retry);
  return std::chrono::milliseconds(static_cast<long long>(std::llround(base * factor)));
}

GenerationResult Generate(TextBackend& backend, const RetryPolicy& retry,
                          const GenerationRequest& request) {
  if (request.context == nullptr) {
    throw std::invalid_argument("generation request without context");
  }
  if (!request.context->IsAlternating()) {
    throw std::invalid_argument(std::string(RoleName(request.role)) +
                                " context does not alternate user/assistant");
  }
  GenerationResult result;
  result.record.role = request.role;
  result.record.request_digest = ContextDigest(*request.context);
  const std::uint64_t salt = MixSeed(0, result.record.request_digest);

  for (int attempt = 0;; ++attempt) {
    const auto start = std::chrono::steady_clock::now();
    try {
      std::string text = backend.Complete(request);
      if (text.empty()) throw BackendError("backend returned empty text");
      result.record.latency = std::chrono::duration_cast<std::chrono::microseconds>(
          std::chrono::steady_clock::now() - start);
      result.record.attempt = attempt + 1;
      result.record.response_text = text;
      result.text = std::move(text);
      return result;
    } catch (const TransientBackendError& e) {
      if (attempt >= retry.max_retries) {
        throw BackendError(std::string(RoleName(request.role)) + " generation failed after " +
                           std::to_string(attempt + 1) + " attempts: " + e.what());
      }
      const auto delay = retry.Delay(attempt, salt);
      Logger()->warn("{} generation attempt {} failed ({}); retrying in {} ms",
                     RoleName(request.role), attempt + 1, e.what(), delay.count());
      if (retry.sleep) {
        retry.sleep(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
    }
  }
}

std::unique_ptr<TextBackend> MakeBackend(const BackendConfig& config) {
  config.Validate();
  if (config.mode == BackendConfig::Mode::kScripted) {
    return std::make_unique<ScriptedBackend>(ScriptedBackend::FromFile(config.script_path));
  }
  return std::make_unique<LiveBackend>(config, MakeHttplibTransport());
}

}  // namespace pcc
