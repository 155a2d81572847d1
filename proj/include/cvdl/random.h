// Copyright 2026 The cvdl Authors
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

#ifndef CVDL_RANDOM_H_
#define CVDL_RANDOM_H_

#include <cstdint>
#include <random>

namespace cvdl {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream splitting rule: stream k of a run seeded with `seed` is an mt19937_64
/// seeded with SplitMix64(seed ^ SplitMix64(k)). Shot k of any Monte Carlo run
/// uses stream k, so results do not depend on evaluation order.
inline Rng StreamRng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(SplitMix64(seed ^ SplitMix64(stream)));
}

}  // namespace cvdl

#endif  // CVDL_RANDOM_H_
