// Copyright 2026 The ioc Authors
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

#include <cmath>
#include <cstdint>
#include <random>

namespace ioc {

/// Seedable random stream used by the samplers and Monte Carlo estimators.
///
/// Streams are splittable: `split(k)` derives an independent substream as a
/// pure function of the base seed and `k`, regardless of how many values
/// have been drawn from the parent. This is what makes sharded Monte Carlo
/// runs deterministic for a fixed (seed, shard count).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : base_seed_(seed), engine_(mix(seed)) {}

  /// Derives the k-th independent substream of this stream.
  RandomStream split(std::uint64_t k) const {
    return RandomStream(mix(base_seed_ + 0x9e3779b97f4a7c15ull * (k + 1)));
  }

  std::uint64_t bits() { return engine_(); }

  /// Uniform draw in the open interval (0, 1).
  double uniform() {
    // 53-bit mantissa draw; zero is rejected so log() stays finite.
    for (;;) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  /// Standard exponential draw.
  double exponential() { return -std::log(uniform()); }

  /// Uniform integer in {0, ..., n-1}.
  int uniform_int(int n) {
    const int k = static_cast<int>(uniform() * n);
    return k < n ? k : n - 1;
  }

 private:
  // splitmix64 finalizer; decorrelates nearby seeds.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::uint64_t base_seed_;
  std::mt19937_64 engine_;
};

}  // namespace ioc
