// Copyright 2026 The qsms Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSMS_RNG_H_
#define QSMS_RNG_H_

#include <cstdint>
#include <random>

namespace qsms {

/// mt19937_64 is fully specified by the standard, so seeded runs are
/// reproducible across platforms as long as we avoid the library
/// distributions (whose algorithms are implementation-defined).
using Rng = std::mt19937_64;

/// Seed for an independent sub-stream of `seed` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Uniform integer in [0, bound). Unbiased; bound must be nonzero.
std::uint64_t uniform_below(Rng &rng, std::uint64_t bound);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng &rng) noexcept;

}  // namespace qsms

#endif  // QSMS_RNG_H_
