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

#include "ppw/ground_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppw/errors.hpp"

namespace ppw {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("augmentation distance alpha must be positive and finite");
}

}  // namespace

GroundSpace GroundSpace::interval(double length, double alpha) {
  return interval(length, alpha, length);
}

GroundSpace GroundSpace::interval(double length, double alpha, double anchor) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw DomainError("interval length must be positive and finite");
  require_alpha(alpha);
  GroundSpace s;
  s.kind_ = Kind::kInterval;
  s.point_dim_ = 1;
  s.alpha_ = alpha;
  s.side_ = length;
  s.anchor_ = {anchor};
  s.diameter_ = length;
  s.check_point(s.anchor_);
  return s;
}

GroundSpace GroundSpace::box(int dim, double side, double alpha) {
  return box(dim, side, alpha, std::vector<double>(dim > 0 ? dim : 0, side));
}

GroundSpace GroundSpace::box(int dim, double side, double alpha, std::vector<double> anchor) {
  if (dim < 1) throw DomainError("box dimension must be at least 1");
  if (!(side > 0.0) || !std::isfinite(side))
    throw DomainError("box side must be positive and finite");
  require_alpha(alpha);
  if (anchor.size() != static_cast<std::size_t>(dim))
    throw PreconditionError("box anchor has the wrong dimension");
  GroundSpace s;
  s.kind_ = Kind::kBox;
  s.point_dim_ = dim;
  s.alpha_ = alpha;
  s.side_ = side;
  s.anchor_ = std::move(anchor);
  s.diameter_ = side * std::sqrt(static_cast<double>(dim));
  s.check_point(s.anchor_);
  return s;
}

GroundSpace GroundSpace::finite_metric(Matrix table, double alpha, std::size_t anchor) {
  require_alpha(alpha);
  const std::size_t n = table.rows();
  if (n == 0 || table.cols() != n)
    throw PreconditionError("finite metric table must be a nonempty square matrix");
  if (anchor >= n) throw DomainError("finite metric anchor index out of range");
  double dmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (table(i, i) != 0.0) throw PreconditionError("finite metric table needs a zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = table(i, j);
      if (!(v >= 0.0) || !std::isfinite(v))
        throw PreconditionError("finite metric entries must be finite and nonnegative");
      if (v != table(j, i)) throw PreconditionError("finite metric table must be symmetric");
      if (i != j && v == 0.0)
        throw PreconditionError("finite metric table has distinct points at distance 0");
      dmax = std::max(dmax, v);
    }
  }
  const double slack = 1e-12 * std::max(1.0, dmax);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table(i, k) > table(i, j) + table(j, k) + slack)
          throw PreconditionError("finite metric table violates the triangle inequality");
  GroundSpace s;
  s.kind_ = Kind::kFiniteMetric;
  s.point_dim_ = 1;
  s.alpha_ = alpha;
  s.side_ = 0.0;
  s.anchor_ = {static_cast<double>(anchor)};
  s.table_ = std::move(table);
  s.diameter_ = dmax;
  return s;
}

std::string GroundSpace::kind_name() const {
  switch (kind_) {
    case Kind::kInterval: return "interval";
    case Kind::kBox: return "box";
    case Kind::kFiniteMetric: return "finite";
  }
  return "unknown";
}

double GroundSpace::volume() const {
  switch (kind_) {
    case Kind::kInterval: return side_;
    case Kind::kBox: return std::pow(side_, point_dim_);
    case Kind::kFiniteMetric: return static_cast<double>(table_.rows());
  }
  return 0.0;
}

double GroundSpace::minkowski_dim() const {
  switch (kind_) {
    case Kind::kInterval: return 1.0;
    case Kind::kBox: return static_cast<double>(point_dim_);
    case Kind::kFiniteMetric: return 0.0;
  }
  return 0.0;
}

bool GroundSpace::anchored_at_end() const {
  return kind_ == Kind::kInterval && (anchor_[0] == side_ || anchor_[0] == 0.0);
}

double GroundSpace::augmented_coordinate() const {
  if (!anchored_at_end())
    throw UnsupportedSpaceError(
        "augmented coordinate needs an interval anchored at an end point");
  return anchor_[0] == side_ ? side_ + alpha_ : -alpha_;
}

bool GroundSpace::contains(PointView x) const {
  if (x.size() != static_cast<std::size_t>(point_dim_)) return false;
  switch (kind_) {
    case Kind::kInterval:
    case Kind::kBox:
      return std::all_of(x.begin(), x.end(), [&](double c) { return c >= 0.0 && c <= side_; });
    case Kind::kFiniteMetric:
      return x[0] >= 0.0 && x[0] == std::floor(x[0]) &&
             x[0] < static_cast<double>(table_.rows());
  }
  return false;
}

void GroundSpace::check_point(PointView x) const {
  if (x.size() != static_cast<std::size_t>(point_dim_))
    throw DomainError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                      std::to_string(point_dim_));
  if (!contains(x)) {
    std::string coords;
    for (double c : x) coords += (coords.empty() ? "" : ", ") + std::to_string(c);
    throw DomainError("point (" + coords + ") lies outside the " + kind_name() + " ground space");
  }
}

double GroundSpace::distance(PointView x, PointView y) const {
  check_point(x);
  check_point(y);
  return distance_unchecked(x, y);
}

double GroundSpace::distance(Augmented, PointView y) const {
  check_point(y);
  return distance_unchecked(kAugmented, y);
}

double GroundSpace::distance_unchecked(PointView x, PointView y) const {
  switch (kind_) {
    case Kind::kInterval:
      return std::abs(x[0] - y[0]);
    case Kind::kBox: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Kind::kFiniteMetric:
      return table_(static_cast<std::size_t>(x[0]), static_cast<std::size_t>(y[0]));
  }
  return 0.0;
}

double GroundSpace::distance_unchecked(Augmented, PointView y) const {
  // For an end-anchored interval s_alpha is a real coordinate; computing the
  // distance from it keeps the assignment and sorted evaluators bit-identical.
  if (kind_ == Kind::kInterval && anchored_at_end())
    return std::abs(augmented_coordinate() - y[0]);
  return alpha_ + distance_unchecked(anchor_, y);
}

double GroundSpace::diameter() const { return diameter_; }

std::uint64_t GroundSpace::covering_number(double eps) const {
  if (!(eps > 0.0)) throw DomainError("covering radius must be positive");
  switch (kind_) {
    case Kind::kInterval:
      return static_cast<std::uint64_t>(std::max(1.0, std::ceil(side_ / eps)));
    case Kind::kBox: {
      const double per_axis = std::max(1.0, std::ceil(diameter_ / eps));
      const double total = std::pow(per_axis, point_dim_);
      if (total > static_cast<double>(std::numeric_limits<std::uint64_t>::max() / 2))
        throw std::overflow_error("box covering number overflows 64 bits");
      return static_cast<std::uint64_t>(total);
    }
    case Kind::kFiniteMetric:
      return covering_centers(eps).size();
  }
  return 0;
}

std::vector<std::vector<double>> GroundSpace::covering_centers(double eps) const {
  if (!(eps > 0.0)) throw DomainError("covering radius must be positive");
  std::vector<std::vector<double>> centers;
  if (kind_ == Kind::kInterval) {
    const auto k = covering_number(eps);
    const double width = side_ / static_cast<double>(k);
    for (std::uint64_t i = 0; i < k; ++i)
      centers.push_back({std::min(side_, (static_cast<double>(i) + 0.5) * width)});
    return centers;
  }
  if (kind_ == Kind::kBox)
    throw UnsupportedSpaceError("box covers are counted, not enumerated");

  // Greedy set cover with closed balls of radius eps / 2.
  const std::size_t n = table_.rows();
  std::vector<bool> covered(n, false);
  std::size_t remaining = n;
  while (remaining > 0) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t gain = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (!covered[j] && table_(c, j) <= eps / 2) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!covered[j] && table_(best, j) <= eps / 2) {
        covered[j] = true;
        --remaining;
      }
    centers.push_back({static_cast<double>(best)});
  }
  return centers;
}

}  // namespace ppw
