// Copyright 2026 The taskorder Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace taskorder {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
/// stream is identical on every standard library.
double uniform01(Rng& rng);

/// Unbiased integer in [0, n) by rejection; n must be positive.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

/// splitmix64 mix of (base, stream). Used to give every Monte Carlo
/// repetition its own independent, schedule-free seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace taskorder
