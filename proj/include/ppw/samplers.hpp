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

#ifndef PPW_SAMPLERS_HPP_
#define PPW_SAMPLERS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ppw/counting_measure.hpp"
#include "ppw/ground_space.hpp"
#include "ppw/rng.hpp"

namespace ppw {

// Poisson process whose total expected mass E[eta(S)] is `mass`; the
// intensity per unit volume is mass / |S|. Locations are uniform on S.
struct HomogeneousPoisson {
  double mass = 1.0;
};

// Poisson process with intensity(x) per unit volume, bounded by
// intensity_max on S. Simulated by thinning a homogeneous process.
struct InhomogeneousPoisson {
  double intensity_max = 1.0;
  std::function<double(PointView)> intensity;
  std::string name = "custom";
};

// Linear Hawkes process on [0, T] with kernel h(t) = branching * decay * e^{-decay t}.
// Its branching ratio (the kernel integral) is `branching`, which must be < 1.
struct HawkesExp {
  double baseline = 1.0;
  double branching = 0.5;
  double decay = 1.0;
};

// Replays a fixed list of measures; the i-th draw of a sample is
// measures[i % size].
struct Deterministic {
  std::vector<CountingMeasure> measures;
};

using SamplerVariant = std::variant<HomogeneousPoisson, InhomogeneousPoisson, HawkesExp, Deterministic>;

struct SamplerSpec {
  SamplerVariant variant;
  GroundSpace space;

  // Throws DomainError/UnsupportedSpaceError for invalid combinations.
  void validate() const;
  std::string name() const;
};

// Hard cap on the number of points of one Hawkes realization.
inline constexpr std::size_t kMaxCascadePoints = 10'000'000;

CountingMeasure sample_poisson(const SamplerSpec& spec, RngStream& stream);
// Immigrant-birth construction: Poisson(baseline) immigrants on [0, T], each
// point spawning Poisson(branching (1 - e^{-decay (T - t)})) children at
// truncated-exponential offsets.
CountingMeasure sample_hawkes_cluster(const SamplerSpec& spec, RngStream& stream);
// Ogata thinning against the conditional intensity, with the O(1) state
// recursion of the exponential kernel.
CountingMeasure sample_hawkes_thinning(const SamplerSpec& spec, RngStream& stream);

// One draw; Hawkes specs use the cluster construction, Deterministic returns
// its first measure.
CountingMeasure sample(const SamplerSpec& spec, RngStream& stream);
// n consecutive draws from one stream.
std::vector<CountingMeasure> sample_many(const SamplerSpec& spec, RngStream& stream, std::size_t n);

// Total progeny of a Galton-Watson tree with Poisson(mu) offspring.
std::int64_t sample_borel(double mu, RngStream& stream);

// Exponential tail envelope P(|eta| = m) <= k1 e^{-lambda m}.
struct TailFit {
  double k1 = 0.0;
  double lambda = 0.0;
};

// lambda is minus the slope of a least-squares line through the log empirical
// survival function log P(|eta| >= m) over the observed support, each m
// weighted by its survival count; k1 is the smallest constant for which
// k1 e^{-lambda m} dominates the empirical pmf at every observed m.
// Needs at least 100 samples; throws DegenerateFitError when every sample has
// the same number of points.
TailFit fit_tail(std::span<const CountingMeasure> samples);
TailFit fit_tail_counts(std::span<const std::size_t> counts);

}  // namespace ppw

#endif  // PPW_SAMPLERS_HPP_
