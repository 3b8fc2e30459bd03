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

#ifndef HANABI_LAB_RNG_H_
#define HANABI_LAB_RNG_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hanabi_lab {

// SplitMix64 finalizer. Used for all seed derivation so that a single
// master seed fans out to independent, individually re-runnable streams.
std::uint64_t SplitMix64(std::uint64_t x);

// Seed for stream `index` under `master`:
//   SplitMix64(master ^ SplitMix64(index + 0x9E3779B97F4A7C15)).
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index);

// Unbiased integer in [0, n) from a 64-bit Mersenne Twister, by rejecting
// raw draws below (2^64 mod n). Unlike std::uniform_int_distribution the
// mapping is fully specified, so shuffles are identical across toolchains.
std::uint64_t UniformBelow(std::mt19937_64& gen, std::uint64_t n);

// Fisher-Yates from the back: for i = n-1 .. 1, swap(v[i], v[UniformBelow(i+1)]).
template <typename T>
void Shuffle(std::vector<T>& v, std::mt19937_64& gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(UniformBelow(gen, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace hanabi_lab

#endif  // HANABI_LAB_RNG_H_
