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

#ifndef PPW_TESTS_TEST_SUPPORT_HPP_
#define PPW_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "ppw/counting_measure.hpp"
#include "ppw/ground_space.hpp"

namespace ppw::testing {

// Frozen high-precision values produced by tests/oracles/bounds_oracle.py.
inline const nlohmann::json& oracle_values() {
  static const nlohmann::json values = [] {
    std::ifstream in(PPW_ORACLE_JSON);
    return nlohmann::json::parse(in);
  }();
  return values;
}

inline double oracle(const std::string& key) { return oracle_values().at(key).get<double>(); }

// Random scalar measure with up to max_size points in [0, length].
inline CountingMeasure random_scalar_measure(std::mt19937_64& gen, std::size_t max_size, double length,
                                             bool allow_ties = true) {
  std::uniform_int_distribution<std::size_t> size(0, max_size);
  std::uniform_real_distribution<double> loc(0.0, length);
  std::bernoulli_distribution tie(0.2);
  CountingMeasure mu;
  const std::size_t k = size(gen);
  for (std::size_t i = 0; i < k; ++i) {
    if (allow_ties && i > 0 && tie(gen))
      mu.add(mu.point(i - 1)[0]);
    else
      mu.add(loc(gen));
  }
  return mu;
}

// D1 on an interval [0, T] with augmentation at distance alpha + |x - anchor|,
// by enumerating every bijection after padding. Independent of the library's
// distance and assignment code; feasible up to ~8 points.
inline double brute_force_d1_interval(const CountingMeasure& a, const CountingMeasure& b,
                                      double alpha, double anchor) {
  const CountingMeasure& big = a.size() >= b.size() ? a : b;
  const CountingMeasure& small = a.size() >= b.size() ? b : a;
  const std::size_t n = big.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = big.point(i)[0];
      const std::size_t j = perm[i];
      cost += j < small.size() ? std::abs(x - small.point(j)[0]) : alpha + std::abs(x - anchor);
    }
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0 ? 0.0 : best;
}

// Minimum over all permutations of sum_i c[i][pi(i)].
template <class Matrix>
double brute_force_assignment(const Matrix& c) {
  const std::size_t n = c.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += c(i, perm[i]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// One-sample Kolmogorov-Smirnov statistic against Uniform(0, 1).
inline double ks_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, (i + 1) / n - u[i]);
    d = std::max(d, u[i] - i / n);
  }
  return d;
}

// Two-sample Kolmogorov-Smirnov statistic; handles ties (discrete data).
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace ppw::testing

#endif  // PPW_TESTS_TEST_SUPPORT_HPP_
