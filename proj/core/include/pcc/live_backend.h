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

#ifndef PCC_LIVE_BACKEND_H_
#define PCC_LIVE_BACKEND_H_

#include <chrono>
#include <map>
#include <memory>
#include <string>

#include "pcc/backend.h"

namespace pcc {

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Minimal POST transport so the live backend can be exercised without a
// network. Throws TransientBackendError when no response is obtained.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse Post(const std::string& url,
                            const std::map<std::string, std::string>& headers,
                            const std::string& body,
                            std::chrono::milliseconds timeout) = 0;
};

std::unique_ptr<HttpTransport> MakeHttplibTransport();

// Body sent for `ctx` under the configured adapter:
//   generic:   {"model", "system", "messages":[{role, content}], "temperature"}
//   anthropic: generic plus "max_tokens"
//   openai:    system prompt folded into "messages"
std::string BuildRequestBody(const BackendConfig& config,
                             const PromptContext& ctx);

// Extracts the model text from a provider response. Accepts {"text": ...},
// Anthropic {"content":[{"type":"text","text":...}]} and OpenAI
// {"choices":[{"message":{"content":...}}]}.
std::string ParseResponseText(const std::string& body);

class LiveBackend : public TextBackend {
 public:
  LiveBackend(BackendConfig config, std::unique_ptr<HttpTransport> transport);

  std::string Complete(const GenerationRequest& request) override;
  std::string_view mode() const override { return "live"; }

 private:
  BackendConfig config_;
  std::unique_ptr<HttpTransport> transport_;
  std::map<std::string, std::string> headers_;
};

}  // namespace pcc

#endif  // PCC_LIVE_BACKEND_H_
