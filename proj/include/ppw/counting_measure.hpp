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

#ifndef PPW_COUNTING_MEASURE_HPP_
#define PPW_COUNTING_MEASURE_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ppw/ground_space.hpp"

namespace ppw {

// A finite counting measure sum_i delta_{x_i}: a multiset of points of S
// stored as a flat coordinate array. Repeated points are allowed and the
// order of points carries no meaning.
class CountingMeasure {
 public:
  // The zero measure on a space whose points have `dim` coordinates.
  explicit CountingMeasure(int dim = 1) : dim_(dim) {}
  CountingMeasure(std::vector<double> coords, int dim);
  // Scalar points, for interval or finite-metric spaces.
  CountingMeasure(std::initializer_list<double> points) : dim_(1), coords_(points) {}

  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return coords_.empty(); }
  int dim() const { return dim_; }
  PointView point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  std::span<const double> coords() const { return coords_; }

  void add(PointView x);
  void add(double x) { add(PointView(&x, 1)); }

  // Points in lexicographic order: the canonical representative of the multiset.
  CountingMeasure canonical() const;

  // Multiset equality.
  friend bool same_multiset(const CountingMeasure& a, const CountingMeasure& b);

 private:
  int dim_ = 1;
  std::vector<double> coords_;
};

// Throws DomainError unless every point of mu lies in S.
void check_measure(const GroundSpace& space, const CountingMeasure& mu);

// D1(mu1, mu2): pad the smaller measure with copies of s_alpha and return the
// optimal assignment cost between the two equal-size point lists. Symmetric
// bit for bit and zero exactly on identical multisets.
double d1(const GroundSpace& space, const CountingMeasure& mu1, const CountingMeasure& mu2);

// Interval fast path: sort both padded lists and add |x_(i) - y_(i)|.
// Requires an interval anchored at one of its end points.
double d1_sorted_1d(const GroundSpace& space, const CountingMeasure& mu1,
                    const CountingMeasure& mu2);

// Area between the step CDFs F(t) = mu([.., t]) / m of the padded measures.
double cdf_gap_area(const GroundSpace& space, const CountingMeasure& mu1,
                    const CountingMeasure& mu2);

// m * cdf_gap_area; equals D1 on end-anchored intervals.
double d1_cdf_area(const GroundSpace& space, const CountingMeasure& mu1,
                   const CountingMeasure& mu2);

// (|mu1| v |mu2|) (diam(S) + alpha).
double d1_upper_bound(const GroundSpace& space, const CountingMeasure& mu1,
                      const CountingMeasure& mu2);

// Unchecked evaluator used on hot paths: sorted fast path on end-anchored
// intervals, assignment otherwise. Inputs must already be validated.
double d1_fast(const GroundSpace& space, const CountingMeasure& mu1, const CountingMeasure& mu2);

}  // namespace ppw

#endif  // PPW_COUNTING_MEASURE_HPP_
