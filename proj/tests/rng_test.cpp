// Copyright 2026 The ppw Authors
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

#include "ppw/rng.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ppw {
namespace {

using Block = std::array<std::uint32_t, 4>;

// Known-answer vectors of the Random123 distribution for philox4x32 with 10 rounds.
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStream, ReproducibleAndStreamSeparated) {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    same_c += x == c.next_u64();
    same_d += x == d.next_u64();
  }
  EXPECT_EQ(same_c, 0);
  EXPECT_EQ(same_d, 0);
}

TEST(RngStream, UniformIsUniform) {
  RngStream s(1, 0);
  std::vector<double> u(100000);
  for (auto& x : u) {
    x = s.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
  EXPECT_LT(testing::ks_uniform(u), 1.628 / std::sqrt(100000.0));
}

TEST(RngStream, ExponentialMoments) {
  RngStream s(2, 0);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.exponential(2.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.5, 4 * 0.5 / std::sqrt(n));
  EXPECT_NEAR(sq / n - mean * mean, 0.25, 0.01);
}

// Mean and variance both equal the parameter; covers the inversion and
// rejection branches.
TEST(RngStream, PoissonMeanAndVariance) {
  for (double mean : {0.3, 4.0, 9.9, 10.0, 37.5, 1000.0}) {
    RngStream s(3, static_cast<std::uint64_t>(mean * 10));
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(s.poisson(mean));
      sum += x;
      sq += x * x;
    }
    const double m = sum / n, v = sq / n - m * m;
    EXPECT_NEAR(m, mean, 4 * std::sqrt(mean / n)) << mean;
    EXPECT_NEAR(v / mean, 1.0, 0.03) << mean;
  }
}

TEST(RngStream, PoissonZeroMean) {
  RngStream s(0, 0);
  EXPECT_EQ(s.poisson(0.0), 0u);
}

}  // namespace
}  // namespace ppw
