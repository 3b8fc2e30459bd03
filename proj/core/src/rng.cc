// Copyright 2026 The Hanabi Lab Authors
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

#include "hanabi_lab/rng.h"

namespace hanabi_lab {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index) {
  return SplitMix64(master ^ SplitMix64(index + 0x9E3779B97F4A7C15ULL));
}

std::uint64_t UniformBelow(std::mt19937_64& gen, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = (0 - n) % n;
  for (;;) {
    std::uint64_t x = gen();
    if (x >= limit) return x % n;
  }
}

}  // namespace hanabi_lab
