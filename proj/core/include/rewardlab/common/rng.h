// Copyright 2026 The rewardlab Authors
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

#ifndef REWARDLAB_COMMON_RNG_H_
#define REWARDLAB_COMMON_RNG_H_

#include <cstdint>
#include <random>

namespace rewardlab {

// Seeded random stream with platform-stable derived draws. The engine is
// std::mt19937_64; the real/int conversions are done here rather than with
// <random> distributions, whose outputs differ between standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). Rejection sampling, so unbiased.
  uint64_t UniformInt(uint64_t n);

  // Standard normal via Box-Muller (one value per call, no caching).
  double Normal();

  // Index drawn from unnormalized nonnegative weights.
  template <typename Container>
  size_t Categorical(const Container& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = Uniform() * total;
    size_t i = 0;
    for (double w : weights) {
      if (u < w) return i;
      u -= w;
      ++i;
    }
    // Rounding fallthrough: return the last positive-weight index.
    size_t last = 0;
    i = 0;
    for (double w : weights) {
      if (w > 0) last = i;
      ++i;
    }
    return last;
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a tag (splitmix64).
uint64_t DeriveSeed(uint64_t base, uint64_t tag);

}  // namespace rewardlab

#endif  // REWARDLAB_COMMON_RNG_H_
