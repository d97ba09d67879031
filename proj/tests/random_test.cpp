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


#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "vmp/random.hpp"

namespace vmp {
namespace {

constexpr int kSamples = 100000;

TEST(Random, DegenerateRangeIsConstant) {
  Rng rng(1);
  for (auto d : {Distribution::kUniform, Distribution::kNormalTruncated, Distribution::kExponentialTruncated}) {
    for (int i = 0; i < 100; ++i) EXPECT_EQ(distributionSample(d, IntRange{4, 4}, rng), 4);
  }
}

TEST(Random, UniformFrequencies) {
  Rng rng(2024);
  std::array<int, 7> counts{};
  for (int i = 0; i < kSamples; ++i) {
    auto v = distributionSample(Distribution::kUniform, IntRange{4, 10}, rng);
    ASSERT_GE(v, 4);
    ASSERT_LE(v, 10);
    ++counts[static_cast<std::size_t>(v - 4)];
  }
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / kSamples, 1.0 / 7.0, 0.01);
}

TEST(Random, NormalTruncatedMean) {
  Rng rng(7);
  double sum = 0;
  for (int i = 0; i < kSamples; ++i) {
    auto v = distributionSample(Distribution::kNormalTruncated, IntRange{2, 16}, rng);
    ASSERT_GE(v, 2);
    ASSERT_LE(v, 16);
    sum += static_cast<double>(v);
  }
  EXPECT_NEAR(sum / kSamples, 9.0, 0.2);
}

TEST(Random, ExponentialTruncatedStaysInRangeAndSkewsLow) {
  Rng rng(8);
  double sum = 0;
  for (int i = 0; i < kSamples; ++i) {
    auto v = distributionSample(Distribution::kExponentialTruncated, IntRange{0, 30}, rng);
    ASSERT_GE(v, 0);
    ASSERT_LE(v, 30);
    sum += static_cast<double>(v);
  }
  // mean of min + Exp(width/3) clipped at width: a little under min + width/3
  EXPECT_GT(sum / kSamples, 8.5);
  EXPECT_LT(sum / kSamples, 10.5);
}

TEST(Random, MoneySamplesInCents) {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    auto m = distributionSample(Distribution::kUniform, MoneyRange{Money::fromCents(10), Money::fromCents(150)}, rng);
    ASSERT_GE(m.cents(), 10);
    ASSERT_LE(m.cents(), 150);
  }
}

TEST(Random, SameSeedSameStream) {
  Rng a(123), b(123), c(124);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Random, EngineIsMersenneTwister64) {
  // Reference value of std::mt19937_64 seeded with 5489: the 10000th output.
  Rng rng(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next();
  EXPECT_EQ(v, 9981545732273789042ull);
}

TEST(Random, BernoulliEdges) {
  Rng rng(3);
  int hits = 0;
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(rng.bernoulli(1.0));
    EXPECT_FALSE(rng.bernoulli(0.0));
    hits += rng.bernoulli(0.5) ? 1 : 0;
  }
  EXPECT_GT(hits, 400);
  EXPECT_LT(hits, 600);
}

}  // namespace
}  // namespace vmp
