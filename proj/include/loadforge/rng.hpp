// Copyright 2026 The LoadForge Authors
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

// Seeded randomness for repeatable runs.
//
// Every stochastic choice in the toolkit flows through Rng, a xoshiro256**
// generator seeded via SplitMix64. Both algorithms are published and have
// single canonical definitions, so equally seeded runs produce identical
// draw sequences on any platform or reimplementation.

#ifndef LOADFORGE_RNG_HPP_
#define LOADFORGE_RNG_HPP_

#include <array>
#include <cstdint>

namespace loadforge {

// SplitMix64 output mixer (Steele, Lea & Flood; the java.util.SplittableRandom
// finalizer).
constexpr uint64_t splitmix64_mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(uint64_t seed) : state_(seed) {}

  constexpr uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

 private:
  uint64_t state_;
};

// Deterministic per-index seed derivation: the (index+1)-th output of the
// SplitMix64 sequence seeded with `master`. Job i of a generated run gets
// derive_seed(master, i) and is reproducible without generating jobs 0..i-1.
constexpr uint64_t derive_seed(uint64_t master, uint64_t index) {
  return splitmix64_mix(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// xoshiro256** 1.0 (Blackman & Vigna, 2018).
class Rng {
 public:
  explicit constexpr Rng(uint64_t seed) : state_{} {
    SplitMix64 sm(seed);
    for (auto& s : state_) s = sm.next();
  }

  constexpr uint64_t next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  constexpr double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  constexpr double uniform(double lo, double hi) {
    return lo + next_double() * (hi - lo);
  }

  constexpr bool bernoulli(double p) { return next_double() < p; }

 private:
  static constexpr uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<uint64_t, 4> state_;
};

}  // namespace loadforge

#endif  // LOADFORGE_RNG_HPP_
