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

#include "pcc/live_backend.h"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace pcc {
namespace {

using nlohmann::json;

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

SplitUrl SplitEndpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport : public HttpTransport {
 public:
  HttpResponse Post(const std::string& url,
                    const std::map<std::string, std::string>& headers,
                    const std::string& body,
                    std::chrono::milliseconds timeout) override {
    const SplitUrl split = SplitEndpoint(url);
    httplib::Client client(split.base);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers h(headers.begin(), headers.end());
    auto res = client.Post(split.path, h, body, "application/json");
    if (!res) {
      throw TransientBackendError("POST " + url + " failed: " + httplib::to_string(res.error()));
    }
    return {res->status, res->body};
  }
};

json MessagesJson(const PromptContext& ctx) {
  json messages = json::array();
  for (const auto& m : ctx.messages) {
    messages.push_back({{"role", m.author == Author::kUser ? "user" : "assistant"},
                        {"content", m.text}});
  }
  return messages;
}

}  // namespace

std::unique_ptr<HttpTransport> MakeHttplibTransport() {
  return std::make_unique<HttplibTransport>();
}

std::string BuildRequestBody(const BackendConfig& config, const PromptContext& ctx) {
  json body;
  body["model"] = config.model_name;
  body["temperature"] = config.temperature;
  if (config.adapter == "openai") {
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", ctx.system_prompt}});
    for (auto& m : MessagesJson(ctx)) messages.push_back(std::move(m));
    body["messages"] = std::move(messages);
  } else {
    body["system"] = ctx.system_prompt;
    body["messages"] = MessagesJson(ctx);
    if (config.adapter == "anthropic") body["max_tokens"] = config.max_tokens;
  }
  return body.dump();
}

std::string ParseResponseText(const std::string& body) {
  const json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw BackendError("backend response is not a JSON object");
  }
  if (j.contains("text") && j["text"].is_string()) return j["text"];
  if (j.contains("content") && j["content"].is_array()) {
    std::string out;
    for (const auto& block : j["content"]) {
      if (block.value("type", "") == "text") out += block.value("text", "");
    }
    if (!out.empty()) return out;
  }
  if (j.contains("choices") && j["choices"].is_array() && !j["choices"].empty()) {
    const auto& choice = j["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content") &&
        choice["message"]["content"].is_string()) {
      return choice["message"]["content"];
    }
  }
  throw BackendError("backend response has no recognizable text field");
}

LiveBackend::LiveBackend(BackendConfig config, std::unique_ptr<HttpTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw BackendError("environment variable " + config_.api_key_env + " is not set");
    }
    if (config_.adapter == "anthropic") {
      headers_["x-api-key"] = key;
      headers_["anthropic-version"] = "2023-06-01";
    } else {
      headers_["Authorization"] = std::string("Bearer ") + key;
    }
  }
}

std::string LiveBackend::Complete(const GenerationRequest& request) {
  const std::string body = BuildRequestBody(config_, *request.context);
  const HttpResponse res = transport_->Post(config_.endpoint, headers_, body, config_.timeout);
  if (res.status == 429 || res.status >= 500) {
    throw TransientBackendError("backend returned HTTP " + std::to_string(res.status));
  }
  if (res.status != 200) {
    throw BackendError("backend returned HTTP " + std::to_string(res.status) + ": " +
                       res.body.substr(0, 200));
  }
  return ParseResponseText(res.body);
}

}  // namespace pcc
