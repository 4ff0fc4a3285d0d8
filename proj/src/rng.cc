// Copyright 2026 The ghostswap Authors
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

#include "ghostswap/rng.h"

namespace ghostswap {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t substream_key(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel) {
    return splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ (channel * 0xD1B54A32D192ED03ull));
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel) {
    const std::uint64_t key = substream_key(seed, trial, channel);
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace ghostswap
