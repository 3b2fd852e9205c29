// Copyright 2026 The srm-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace srmforge {

/// Seeded generator shared by splitting, bagging and search. The engine is fully specified by the
/// standard; the helpers below avoid the implementation-defined distributions so results match
/// across standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection sampling. `n` must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
    std::uint64_t x;
    do {
        x = rng();
    } while (x < threshold);
    return x % n;
}

/// Uniform real in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

/// 0..n-1 in seeded random order.
inline std::vector<std::size_t> permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    shuffle_in_place(idx, rng);
    return idx;
}

} // namespace srmforge
