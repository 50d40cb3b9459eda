// Copyright 2026 The Fairlink Authors
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

#include "fairlink/rng.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

namespace fairlink {
namespace {

TEST(Rng, SameSeedSameSequence) {
  rng::Stream a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, DistinctTagsGiveDistinctStreams) {
  rng::Stream a = rng::derive(7, {1});
  rng::Stream b = rng::derive(7, {2});
  int equal = 0;
  for (int i = 0; i < 64; ++i) equal += a.next_u64() == b.next_u64() ? 1 : 0;
  EXPECT_EQ(equal, 0);
}

TEST(Rng, UnitIntervalBounds) {
  rng::Stream s(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.next_unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, UniformBelowCoversRange) {
  rng::Stream s(11);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) seen[s.uniform_below(7)]++;
  for (int c : seen) EXPECT_GT(c, 800);
}

TEST(Rng, LaplaceMomentsMatchDensity) {
  rng::Stream s(5);
  const double scale = 2.0;
  double sum = 0.0, abs_sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = s.laplace(scale);
    sum += x;
    abs_sum += std::fabs(x);
  }
  EXPECT_NEAR(sum / n, 0.0, 0.03);
  EXPECT_NEAR(abs_sum / n, scale, 0.03);  // E|X| = scale for Laplace
}

TEST(Rng, BernoulliRate) {
  rng::Stream s(9);
  int hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) hits += s.bernoulli(0.3) ? 1 : 0;
  EXPECT_NEAR(hits / static_cast<double>(n), 0.3, 0.01);
}

TEST(Rng, StringTaggedDerivation) {
  rng::Stream a = rng::derive(1, "alpha");
  rng::Stream b = rng::derive(1, "beta");
  rng::Stream a2 = rng::derive(1, "alpha");
  EXPECT_NE(a.next_u64(), b.next_u64());
  rng::Stream a3 = rng::derive(1, "alpha");
  EXPECT_EQ(a2.next_u64(), a3.next_u64());
}

}  // namespace
}  // namespace fairlink
