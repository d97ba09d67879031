// Copyright 2026 The vmpgen Authors. All Rights Reserved.
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

#ifndef VMP_RANDOM_HPP
#define VMP_RANDOM_HPP

#include <cstdint>
#include <random>

#include "vmp/model.hpp"

namespace vmp {

// Deterministic random source. The engine is std::mt19937_64 (its output
// sequence is fixed by the C++ standard); every distribution on top of it is
// implemented here so generated files do not depend on the standard library
// vendor's distribution algorithms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased integer in [lo, hi] (rejection sampling). lo <= hi.
  std::int64_t uniformInt(std::int64_t lo, std::int64_t hi);
  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform01() < p); }
  // Standard normal via Box-Muller (one value per call).
  double standardNormal();

 private:
  std::mt19937_64 engine_;
};

// Draws one integer in [range.min, range.max]:
//   uniform               equiprobable integers
//   normal-truncated      mean at the midpoint, sd = width/6, rounded,
//                         rejection-resampled until inside the range
//   exponential-truncated min + Exp(mean = width/3), rounded, clipped to max
// A degenerate range always yields its single value. Precondition min <= max.
std::int64_t distributionSample(Distribution dist, IntRange range, Rng& rng);

// Same, over cents.
Money distributionSample(Distribution dist, MoneyRange range, Rng& rng);

}  // namespace vmp

#endif  // VMP_RANDOM_HPP
