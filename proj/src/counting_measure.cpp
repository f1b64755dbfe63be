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

#include "ppw/counting_measure.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <string>
#include <utility>

#include "ppw/assignment.hpp"
#include "ppw/errors.hpp"

namespace ppw {
namespace {

// Lexicographic order on points; returns negative, zero or positive.
int compare_points(PointView a, PointView b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return -1;
    if (a[k] > b[k]) return 1;
  }
  return 0;
}

// Orders the pair so that d1 always runs the same computation for (a, b) and
// (b, a): fewer points first, ties broken lexicographically.
bool comes_first(const CountingMeasure& a, const CountingMeasure& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = compare_points(a.point(i), b.point(i));
    if (c != 0) return c < 0;
  }
  return true;
}

void check_dims(const GroundSpace& space, const CountingMeasure& mu) {
  if (!mu.empty() && mu.dim() != space.point_dim())
    throw DomainError("measure points have the wrong number of coordinates for this space");
}

double d1_assignment(const GroundSpace& space, const CountingMeasure& a,
                     const CountingMeasure& b) {
  const CountingMeasure ca = a.canonical();
  const CountingMeasure cb = b.canonical();
  const bool keep = comes_first(ca, cb);
  const CountingMeasure& small = keep ? ca : cb;
  const CountingMeasure& large = keep ? cb : ca;
  const std::size_t n = small.size();
  const std::size_t m = large.size();
  if (m == 0) return 0.0;
  if (n == m && same_multiset(small, large)) return 0.0;
  if (n == 0) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += space.distance_unchecked(kAugmented, large.point(j));
    return s;
  }
  Matrix cost(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    auto row = cost.row(i);
    for (std::size_t j = 0; j < m; ++j)
      row[j] = i < n ? space.distance_unchecked(small.point(i), large.point(j))
                     : space.distance_unchecked(kAugmented, large.point(j));
  }
  return solve_assignment(cost).cost;
}

// Scalar coordinates of a measure padded up to m points with s_alpha, sorted.
std::vector<double> padded_sorted(const GroundSpace& space, const CountingMeasure& mu,
                                  std::size_t m) {
  std::vector<double> xs(mu.coords().begin(), mu.coords().end());
  xs.resize(m, space.augmented_coordinate());
  std::sort(xs.begin(), xs.end());
  return xs;
}

void require_end_anchored_interval(const GroundSpace& space, const char* op) {
  if (space.kind() != GroundSpace::Kind::kInterval)
    throw UnsupportedSpaceError(std::string(op) + " needs an interval ground space");
  if (!space.anchored_at_end())
    throw UnsupportedSpaceError(std::string(op) +
                                " needs the augmentation anchored at an interval end point");
}

double sorted_sum(const GroundSpace& space, const CountingMeasure& a, const CountingMeasure& b) {
  // Sorted lists do not depend on argument order, so the sum is symmetric.
  const std::size_t m = std::max(a.size(), b.size());
  const auto xs = padded_sorted(space, a, m);
  const auto ys = padded_sorted(space, b, m);
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += std::abs(xs[i] - ys[i]);
  return s;
}

}  // namespace

CountingMeasure::CountingMeasure(std::vector<double> coords, int dim)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1) throw PreconditionError("points need at least one coordinate");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
    throw PreconditionError("coordinate count is not a multiple of the point dimension");
}

void CountingMeasure::add(PointView x) {
  if (x.size() != static_cast<std::size_t>(dim_))
    throw PreconditionError("point has the wrong number of coordinates");
  coords_.insert(coords_.end(), x.begin(), x.end());
}

CountingMeasure CountingMeasure::canonical() const {
  const std::size_t n = size();
  if (dim_ == 1) {
    CountingMeasure out = *this;
    std::sort(out.coords_.begin(), out.coords_.end());
    return out;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare_points(point(a), point(b)) < 0;
  });
  CountingMeasure out(dim_);
  out.coords_.reserve(coords_.size());
  for (std::size_t i : order) out.add(point(i));
  return out;
}

bool same_multiset(const CountingMeasure& a, const CountingMeasure& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  if (a.dim() != b.dim()) return false;
  const auto ca = a.canonical();
  const auto cb = b.canonical();
  return std::equal(ca.coords_.begin(), ca.coords_.end(), cb.coords_.begin());
}

void check_measure(const GroundSpace& space, const CountingMeasure& mu) {
  check_dims(space, mu);
  for (std::size_t i = 0; i < mu.size(); ++i) space.check_point(mu.point(i));
}

double d1(const GroundSpace& space, const CountingMeasure& mu1, const CountingMeasure& mu2) {
  check_measure(space, mu1);
  check_measure(space, mu2);
  return d1_assignment(space, mu1, mu2);
}

double d1_sorted_1d(const GroundSpace& space, const CountingMeasure& mu1,
                    const CountingMeasure& mu2) {
  require_end_anchored_interval(space, "d1_sorted_1d");
  check_measure(space, mu1);
  check_measure(space, mu2);
  return sorted_sum(space, mu1, mu2);
}

double cdf_gap_area(const GroundSpace& space, const CountingMeasure& mu1,
                    const CountingMeasure& mu2) {
  require_end_anchored_interval(space, "d1_cdf_area");
  check_measure(space, mu1);
  check_measure(space, mu2);
  const std::size_t m = std::max(mu1.size(), mu2.size());
  if (m == 0) return 0.0;
  const auto xs = padded_sorted(space, mu1, m);
  const auto ys = padded_sorted(space, mu2, m);
  // Sweep the merged breakpoints; between consecutive ones both step CDFs
  // are constant.
  std::vector<double> breaks;
  breaks.reserve(2 * m);
  std::merge(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(breaks));
  double area_times_m = 0.0;
  std::size_t cx = 0, cy = 0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double t = breaks[k];
    while (cx < m && xs[cx] <= t) ++cx;
    while (cy < m && ys[cy] <= t) ++cy;
    const double width = breaks[k + 1] - t;
    if (width > 0.0)
      area_times_m += std::abs(static_cast<double>(cx) - static_cast<double>(cy)) * width;
  }
  return area_times_m / static_cast<double>(m);
}

double d1_cdf_area(const GroundSpace& space, const CountingMeasure& mu1,
                   const CountingMeasure& mu2) {
  const std::size_t m = std::max(mu1.size(), mu2.size());
  return static_cast<double>(m) * cdf_gap_area(space, mu1, mu2);
}

double d1_upper_bound(const GroundSpace& space, const CountingMeasure& mu1,
                      const CountingMeasure& mu2) {
  const double m = static_cast<double>(std::max(mu1.size(), mu2.size()));
  return m * (space.diameter() + space.alpha());
}

double d1_fast(const GroundSpace& space, const CountingMeasure& mu1, const CountingMeasure& mu2) {
  if (space.kind() == GroundSpace::Kind::kInterval && space.anchored_at_end())
    return sorted_sum(space, mu1, mu2);
  return d1_assignment(space, mu1, mu2);
}

}  // namespace ppw
