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

#include "ppw/assignment.hpp"

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ppw {
namespace {

TEST(Assignment, SmallKnownInstance) {
  const Matrix c{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  const auto a = solve_assignment(c);
  EXPECT_DOUBLE_EQ(a.cost, 5.0);
  EXPECT_EQ(a.row_to_col, (std::vector<std::size_t>{1, 0, 2}));
}

TEST(Assignment, EmptyMatrix) {
  const auto a = solve_assignment(Matrix(0, 0));
  EXPECT_EQ(a.cost, 0.0);
  EXPECT_TRUE(a.row_to_col.empty());
}

TEST(Assignment, RectangularUsesDistinctColumns) {
  const Matrix c{{5, 1, 9, 2}, {1, 6, 9, 3}};
  const auto a = solve_assignment(c);
  EXPECT_DOUBLE_EQ(a.cost, 2.0);
  EXPECT_EQ(a.row_to_col[0], 1u);
  EXPECT_EQ(a.row_to_col[1], 0u);
}

TEST(Assignment, MatchesPermutationSearch) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> coarse(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 7;
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c(i, j) = trial % 2 ? u(gen) : coarse(gen);
    const auto a = solve_assignment(c);
    EXPECT_NEAR(a.cost, testing::brute_force_assignment(c), 1e-9);
    std::set<std::size_t> cols(a.row_to_col.begin(), a.row_to_col.end());
    EXPECT_EQ(cols.size(), n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += c(i, a.row_to_col[i]);
    EXPECT_DOUBLE_EQ(s, a.cost);
  }
}

}  // namespace
}  // namespace ppw
