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

#include "vmp/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace vmp {

std::int64_t Rng::uniformInt(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == 0) return lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next());
  const std::uint64_t buckets = span + 1;
  // Largest multiple of `buckets` representable; reject draws above it.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % buckets + 1) % buckets;
  std::uint64_t draw = next();
  while (draw > limit) draw = next();
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % buckets);
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::standardNormal() {
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t distributionSample(Distribution dist, IntRange range, Rng& rng) {
  if (range.min >= range.max) return range.min;
  const double width = static_cast<double>(range.max - range.min);
  switch (dist) {
    case Distribution::kUniform:
      return rng.uniformInt(range.min, range.max);
    case Distribution::kNormalTruncated: {
      const double mean = static_cast<double>(range.min) + width / 2.0;
      const double sd = width / 6.0;
      while (true) {
        const double x = std::round(mean + sd * rng.standardNormal());
        if (x >= static_cast<double>(range.min) && x <= static_cast<double>(range.max)) {
          return static_cast<std::int64_t>(x);
        }
      }
    }
    case Distribution::kExponentialTruncated: {
      const double mean = width / 3.0;
      const double x = std::round(-mean * std::log1p(-rng.uniform01()));
      return x >= width ? range.max : range.min + static_cast<std::int64_t>(x);
    }
  }
  return range.min;
}

Money distributionSample(Distribution dist, MoneyRange range, Rng& rng) {
  return Money::fromCents(distributionSample(dist, IntRange{range.min.cents(), range.max.cents()}, rng));
}

}  // namespace vmp
