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

#ifndef PCC_SCRIPTED_BACKEND_H_
#define PCC_SCRIPTED_BACKEND_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <tuple>

#include "pcc/backend.h"

namespace pcc {

// Deterministic backend replaying a script of `role<TAB>turn_index<TAB>text`
// lines. The role column may carry a scope selector, `doctor@vignette_1` or
// `patient@vignette_1__none#1`, which is preferred over the bare role when the
// request lists that scope. Text accepts the \n, \t and \\ escapes. Lines
// starting with '#' and blank lines are ignored.
class ScriptedBackend : public TextBackend {
 public:
  static ScriptedBackend FromFile(const std::filesystem::path& path);
  static ScriptedBackend FromString(std::string_view script,
                                    std::string_view origin = "<string>");

  std::string Complete(const GenerationRequest& request) override;
  std::string_view mode() const override { return "scripted"; }

  std::size_t size() const { return lines_.size(); }

 private:
  using Key = std::tuple<AgentRole, std::string, int>;  // role, scope, turn

  std::map<Key, std::string> lines_;
  std::string origin_;
};

}  // namespace pcc

#endif  // PCC_SCRIPTED_BACKEND_H_
