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

#ifndef PCC_DIGEST_H_
#define PCC_DIGEST_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace pcc {

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

// Digest over every regular file below `dir`, visited in sorted relative-path
// order. Both the relative path and the contents feed the hash, so renames
// change the digest.
std::string DirectoryDigest(const std::filesystem::path& dir);

}  // namespace pcc

#endif  // PCC_DIGEST_H_
