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

#pragma once

#include <cstdint>
#include <random>

namespace ghostswap {

std::uint64_t splitmix64(std::uint64_t x);

/// Key of the (trial, channel) substream of a seed. A pure function of its
/// arguments, so draws do not depend on evaluation order or thread count.
std::uint64_t substream_key(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel);

/// Engine for one substream.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel);

}  // namespace ghostswap
