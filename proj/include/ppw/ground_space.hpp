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

#ifndef PPW_GROUND_SPACE_HPP_
#define PPW_GROUND_SPACE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ppw/matrix.hpp"

namespace ppw {

// Coordinates of one point. Interval points have one coordinate, Box points
// have d, FiniteMetric points carry their integer index as a double.
using PointView = std::span<const double>;

// Token for the augmentation point s_alpha that lies outside S.
struct Augmented {};
inline constexpr Augmented kAugmented{};

// A compact metric space (S, rho) together with its augmentation point
// s_alpha. The distance from s_alpha is alpha + rho(x, anchor), so
// inf_x rho(s_alpha, x) = alpha, attained at the anchor. For an interval
// anchored at T this is the point T + alpha on the real line.
//
// Immutable after construction.
class GroundSpace {
 public:
  enum class Kind { kInterval, kBox, kFiniteMetric };

  // [0, length]; the anchor defaults to the right end.
  static GroundSpace interval(double length, double alpha = 1.0);
  static GroundSpace interval(double length, double alpha, double anchor);
  // [0, side]^dim with the Euclidean metric; anchor defaults to (side, ..., side).
  static GroundSpace box(int dim, double side, double alpha = 1.0);
  static GroundSpace box(int dim, double side, double alpha, std::vector<double> anchor);
  // n points with a symmetric, zero-diagonal, nonnegative distance table that
  // satisfies the triangle inequality.
  static GroundSpace finite_metric(Matrix table, double alpha, std::size_t anchor);

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  // Number of coordinates per point.
  int point_dim() const { return point_dim_; }
  double alpha() const { return alpha_; }
  // Interval length or box side; 0 for finite metrics.
  double side() const { return side_; }
  std::size_t finite_size() const { return table_.rows(); }
  const Matrix& table() const { return table_; }
  PointView anchor() const { return anchor_; }
  // Lebesgue measure of S (T or T^d); the cardinality for finite metrics.
  double volume() const;
  // Minkowski dimension: 1 for intervals, d for boxes, 0 for finite sets.
  double minkowski_dim() const;
  // Interval only: the real coordinate representing s_alpha when the anchor
  // sits at an end point (T + alpha or -alpha). Throws otherwise.
  double augmented_coordinate() const;
  bool anchored_at_end() const;

  bool contains(PointView x) const;
  // Throws DomainError if x is not a point of S.
  void check_point(PointView x) const;

  double distance(PointView x, PointView y) const;
  double distance(Augmented, PointView y) const;
  double distance(PointView x, Augmented) const { return distance(kAugmented, x); }
  double distance(Augmented, Augmented) const { return 0.0; }

  // Same as distance() without validating the arguments.
  double distance_unchecked(PointView x, PointView y) const;
  double distance_unchecked(Augmented, PointView y) const;

  double diameter() const;

  // Number of closed balls of diameter eps used to cover S: exact for
  // intervals, an axis-aligned grid upper bound for boxes and a greedy-cover
  // upper bound for finite metrics.
  std::uint64_t covering_number(double eps) const;
  // Centres of the cover counted by covering_number() (Interval and
  // FiniteMetric only; boxes would enumerate an exponential grid).
  std::vector<std::vector<double>> covering_centers(double eps) const;

 private:
  GroundSpace() = default;

  Kind kind_ = Kind::kInterval;
  int point_dim_ = 1;
  double alpha_ = 1.0;
  double side_ = 0.0;
  std::vector<double> anchor_;
  Matrix table_;
  double diameter_ = 0.0;
};

}  // namespace ppw

#endif  // PPW_GROUND_SPACE_HPP_
