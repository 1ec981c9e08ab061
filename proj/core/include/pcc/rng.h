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

#ifndef PCC_RNG_H_
#define PCC_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace pcc {

// The standard distributions are implementation-defined, so everything that
// must replay bit-identically across toolchains draws through these helpers.
using Rng = std::mt19937_64;

// Uniform integer in [0, n). Rejection sampling, no modulo bias.
std::uint64_t UniformIndex(Rng& rng, std::uint64_t n);

// Uniform double in [0, 1) with 53 random bits.
double UniformUnit(Rng& rng);

// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t MixSeed(std::uint64_t seed, std::string_view salt);

}  // namespace pcc

#endif  // PCC_RNG_H_
