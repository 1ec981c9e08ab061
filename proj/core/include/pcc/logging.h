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

#ifndef PCC_LOGGING_H_
#define PCC_LOGGING_H_

#include <memory>

#include "spdlog/logger.h"

namespace pcc {

// Shared library logger ("pcc"). Tools and tests may attach extra sinks.
std::shared_ptr<spdlog::logger> Logger();

}  // namespace pcc

#endif  // PCC_LOGGING_H_
