// Copyright 2026 The qsq Authors
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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace qsq {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Named substream tags. Every randomized component derives its engine from
// (seed, tag, index) so results do not depend on scheduling.
enum class Stream : std::uint64_t {
  kTrial = 1,
  kTarget = 2,
  kOracle = 3,
  kValidation = 4,
  kUnlabeled = 5,
  kMonteCarlo = 6,
  kLpn = 7,
  kProbe = 8,
  kAdversary = 9,
};

inline Rng substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ splitmix64(index + 0x8cb92ba72f3d8dd7ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

inline Rng substream(std::uint64_t seed, Stream tag, std::uint64_t index = 0) {
  return substream(seed, static_cast<std::uint64_t>(tag), index);
}

// Runs fn(block) for block in [0, num_blocks) on up to `jobs` threads. The
// caller reduces per-block results in block order, so the output is
// independent of the worker count.
void run_blocks(std::size_t num_blocks, std::size_t jobs,
                const std::function<void(std::size_t)>& fn);

}  // namespace qsq
