/*
Copyright (c) 2026 The sparse-alloc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <bit>
#include <cstdint>

namespace sparsealloc {

/// Counter-based splittable generator (splitmix64).
///
/// Every random decision in this project flows through this generator so
/// that runs are reproducible bit-for-bit from a 64-bit seed, on any
/// platform and in any language that reimplements the three constants
/// below. `fork(tag)` derives an independent child stream without
/// advancing the parent, which is how per-copy, per-phase and per-vertex
/// streams are labeled.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kMixA = 0xbf58476d1ce4e5b9ULL;
  static constexpr std::uint64_t kMixB = 0x94d049bb133111ebULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * kMixA;
    z = (z ^ (z >> 27)) * kMixB;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform integer in [0, bound). bound <= 1 consumes no draw.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t mask = ~0ULL >> std::countl_zero(bound - 1);
    for (;;) {
      const std::uint64_t r = next() & mask;
      if (r < bound) return r;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Child stream labeled by `tag`; the parent state is not advanced.
  Rng fork(std::uint64_t tag) const {
    return Rng(mix(state_ ^ mix(tag + kGamma)));
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace sparsealloc
