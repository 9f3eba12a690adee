// Copyright 2026 The goldnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace goldnoma {

using Rng = std::mt19937_64;

/// Identifiers for the independent random streams used by one Monte Carlo
/// trial. Every (master seed, trial, stream) triple maps to its own seed.
enum class Stream : std::uint64_t {
    channel = 1,
    symbols = 2,
    noise = 3,
    pilot_noise = 4,
    trajectory = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for a trial stream. Mixing is chained so that no two distinct
/// (master, trial, stream) triples collide in practice.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial,
                                    Stream stream) noexcept {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ trial);
    s = splitmix64(s ^ (static_cast<std::uint64_t>(stream) << 56));
    return s;
}

inline Rng make_rng(std::uint64_t master, std::uint64_t trial, Stream stream) {
    return Rng{derive_seed(master, trial, stream)};
}

}  // namespace goldnoma
