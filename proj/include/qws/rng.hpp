// Copyright 2026 The qws Authors
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
#include <string_view>

namespace qws {

// All randomness in an experiment flows from one root seed through named
// substreams, so per-coefficient work is reproducible regardless of
// evaluation order.

uint64_t splitmix64(uint64_t x);

/// Seed for the substream identified by (root, name, index).
uint64_t substream_seed(uint64_t root, std::string_view name, uint64_t index = 0);

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

inline std::mt19937_64 make_rng(uint64_t root, std::string_view name, uint64_t index = 0) {
    return std::mt19937_64(substream_seed(root, name, index));
}

}  // namespace qws
