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

#include "pcc/scripted_backend.h"

#include <charconv>

#include "pcc/text.h"

namespace pcc {

ScriptedBackend ScriptedBackend::FromFile(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = ReadFile(path.string());
  } catch (const std::exception& e) {
    throw BackendError("cannot read script: " + std::string(e.what()));
  }
  return FromString(contents, path.string());
}

ScriptedBackend ScriptedBackend::FromString(std::string_view script,
                                            std::string_view origin) {
  ScriptedBackend backend;
  backend.origin_ = std::string(origin);
  int line_no = 0;
  for (auto line : Split(script, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    const std::string where = backend.origin_ + ":" + std::to_string(line_no);
    if (tab2 == std::string::npos) {
      throw BackendError(where + ": expected role<TAB>turn_index<TAB>text");
    }
    const std::string_view role_field = std::string_view(line).substr(0, tab1);
    const std::string_view index_field =
        std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1);

    const auto at = role_field.find('@');
    const auto role = ParseRole(role_field.substr(0, at));
    if (!role) throw BackendError(where + ": unknown role '" + std::string(role_field) + "'");
    const std::string scope =
        at == std::string_view::npos ? "" : std::string(role_field.substr(at + 1));

    int index = -1;
    const auto [ptr, ec] = std::from_chars(index_field.data(),
                                           index_field.data() + index_field.size(), index);
    if (ec != std::errc() || ptr != index_field.data() + index_field.size() || index < 0) {
      throw BackendError(where + ": bad turn index '" + std::string(index_field) + "'");
    }
    const Key key{*role, scope, index};
    if (!backend.lines_.emplace(key, UnescapeField(line.substr(tab2 + 1))).second) {
      throw BackendError(where + ": duplicate line for " + std::string(role_field) + " " +
                         std::to_string(index));
    }
  }
  return backend;
}

std::string ScriptedBackend::Complete(const GenerationRequest& request) {
  for (const auto& scope : request.scopes) {
    if (auto it = lines_.find(Key{request.role, scope, request.turn_index});
        it != lines_.end()) {
      return it->second;
    }
  }
  if (auto it = lines_.find(Key{request.role, "", request.turn_index}); it != lines_.end()) {
    return it->second;
  }
  throw ScriptExhaustedError("script " + origin_ + " has no " +
                             std::string(RoleName(request.role)) + " line for turn " +
                             std::to_string(request.turn_index));
}

}  // namespace pcc
