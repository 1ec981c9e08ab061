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

#ifndef PCC_BACKEND_H_
#define PCC_BACKEND_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcc {

enum class AgentRole { kPatient, kDoctor, kModerator, kCritic };

std::string_view RoleName(AgentRole role);
std::optional<AgentRole> ParseRole(std::string_view name);

enum class Author { kUser, kAssistant };

struct Message {
  Author author;
  std::string text;

  bool operator==(const Message&) const = default;
};

// System prompt plus chat history as one agent sees it. Backends require the
// history to alternate strictly, starting with a user message.
struct PromptContext {
  std::string system_prompt;
  std::vector<Message> messages;

  bool IsAlternating() const;
  PromptContext WithUser(std::string text) const;

  bool operator==(const PromptContext&) const = default;
};

// Stable SHA-256 over the rendered context.
std::string ContextDigest(const PromptContext& ctx);

// One generation call. `turn_index` and `scopes` key scripted lines; live
// backends ignore them.
struct GenerationRequest {
  AgentRole role = AgentRole::kDoctor;
  int turn_index = 0;
  // Script scopes, most specific first. The generic (unscoped) line is always
  // the last fallback.
  std::vector<std::string> scopes;
  const PromptContext* context = nullptr;
};

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Transport-level failure worth retrying (connection refused, timeout, 429,
// 5xx).
class TransientBackendError : public BackendError {
 public:
  using BackendError::BackendError;
};

class ScriptExhaustedError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Text-in/text-out model backend. Implementations must be safe to call from
// several conversations concurrently.
class TextBackend {
 public:
  virtual ~TextBackend() = default;
  virtual std::string Complete(const GenerationRequest& request) = 0;
  virtual std::string_view mode() const = 0;
};

struct BackendConfig {
  enum class Mode { kLive, kScripted };

  Mode mode = Mode::kScripted;
  // Live mode.
  std::string endpoint;
  std::string model_name;
  std::string adapter = "generic";  // generic | anthropic | openai
  std::string api_key_env;          // name of the variable, never its value
  int max_tokens = 1024;
  // Both modes.
  double temperature = 1.0;
  std::chrono::milliseconds timeout{60000};
  int max_retries = 2;
  std::chrono::milliseconds initial_backoff{1000};
  // Scripted mode.
  std::filesystem::path script_path;

  // Throws std::invalid_argument on out-of-range or missing settings.
  void Validate() const;
};

std::string_view ModeName(BackendConfig::Mode mode);

struct RetryPolicy {
  int max_retries = 2;
  std::chrono::milliseconds initial_backoff{1000};
  double jitter = 0.2;
  std::function<void(std::chrono::milliseconds)> sleep;  // default: sleep_for

  static RetryPolicy FromConfig(const BackendConfig& config);

  // Delay before retry number `retry` (0-based): initial * 2^retry scaled by a
  // factor in [1 - jitter, 1 + jitter] derived from `salt`.
  std::chrono::milliseconds Delay(int retry, std::uint64_t salt) const;
};

struct GenerationRecord {
  AgentRole role = AgentRole::kDoctor;
  std::string request_digest;
  std::string response_text;
  std::chrono::microseconds latency{0};
  int attempt = 0;  // 1-based attempt that succeeded
};

struct GenerationResult {
  std::string text;
  GenerationRecord record;
};

// Validates alternation, calls the backend, and retries transient failures
// with exponential backoff. Throws std::invalid_argument for a malformed
// context and BackendError once retries are spent.
GenerationResult Generate(TextBackend& backend, const RetryPolicy& retry,
                          const GenerationRequest& request);

// Builds the backend selected by `config` (scripted script is loaded eagerly).
std::unique_ptr<TextBackend> MakeBackend(const BackendConfig& config);

}  // namespace pcc

#endif  // PCC_BACKEND_H_
