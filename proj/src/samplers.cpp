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

#include "ppw/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ppw/errors.hpp"

namespace ppw {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void uniform_point(const GroundSpace& space, RngStream& stream, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(space.point_dim()));
  for (double& c : out) c = std::min(space.side(), space.side() * stream.uniform());
}

const HawkesExp& hawkes_of(const SamplerSpec& spec) {
  const auto* h = std::get_if<HawkesExp>(&spec.variant);
  if (h == nullptr) throw PreconditionError("sampler is not a Hawkes process");
  if (spec.space.kind() != GroundSpace::Kind::kInterval)
    throw UnsupportedSpaceError("Hawkes processes live on an interval");
  return *h;
}

void guard_cascade(std::size_t points) {
  if (points > kMaxCascadePoints)
    throw RunawayCascadeError("Hawkes realization exceeded " +
                              std::to_string(kMaxCascadePoints) + " points");
}

}  // namespace

void SamplerSpec::validate() const {
  std::visit(
      Overloaded{
          [&](const HomogeneousPoisson& p) {
            if (!(p.mass >= 0.0) || !std::isfinite(p.mass))
              throw DomainError("Poisson mass must be finite and nonnegative");
            if (space.kind() == GroundSpace::Kind::kFiniteMetric)
              throw UnsupportedSpaceError("Poisson sampling needs an interval or box");
          },
          [&](const InhomogeneousPoisson& p) {
            if (!(p.intensity_max >= 0.0) || !std::isfinite(p.intensity_max))
              throw DomainError("intensity bound must be finite and nonnegative");
            if (!p.intensity) throw PreconditionError("inhomogeneous Poisson needs an intensity");
            if (space.kind() == GroundSpace::Kind::kFiniteMetric)
              throw UnsupportedSpaceError("Poisson sampling needs an interval or box");
          },
          [&](const HawkesExp& h) {
            if (space.kind() != GroundSpace::Kind::kInterval)
              throw UnsupportedSpaceError("Hawkes processes live on an interval");
            if (!(h.baseline >= 0.0) || !std::isfinite(h.baseline))
              throw DomainError("Hawkes baseline must be finite and nonnegative");
            if (!(h.branching >= 0.0 && h.branching < 1.0))
              throw DomainError("Hawkes branching ratio must lie in [0, 1)");
            if (!(h.decay > 0.0) || !std::isfinite(h.decay))
              throw DomainError("Hawkes decay must be positive");
          },
          [&](const Deterministic& d) {
            if (d.measures.empty()) throw PreconditionError("deterministic sampler needs a measure");
            for (const auto& mu : d.measures) check_measure(space, mu);
          },
      },
      variant);
}

std::string SamplerSpec::name() const {
  return std::visit(Overloaded{
                        [](const HomogeneousPoisson&) { return std::string("poisson"); },
                        [](const InhomogeneousPoisson&) { return std::string("inhomogeneous_poisson"); },
                        [](const HawkesExp&) { return std::string("hawkes"); },
                        [](const Deterministic&) { return std::string("deterministic"); },
                    },
                    variant);
}

CountingMeasure sample_poisson(const SamplerSpec& spec, RngStream& stream) {
  CountingMeasure mu(spec.space.point_dim());
  std::vector<double> x;
  if (const auto* h = std::get_if<HomogeneousPoisson>(&spec.variant)) {
    const auto count = stream.poisson(h->mass);
    for (std::uint64_t i = 0; i < count; ++i) {
      uniform_point(spec.space, stream, x);
      mu.add(x);
    }
    return mu;
  }
  if (const auto* ih = std::get_if<InhomogeneousPoisson>(&spec.variant)) {
    const auto candidates = stream.poisson(ih->intensity_max * spec.space.volume());
    for (std::uint64_t i = 0; i < candidates; ++i) {
      uniform_point(spec.space, stream, x);
      const double accept = stream.uniform();
      const double rate = ih->intensity(x);
      if (rate > ih->intensity_max * (1.0 + 1e-12))
        throw DomainError("intensity exceeds its declared bound");
      if (accept * ih->intensity_max < rate) mu.add(x);
    }
    return mu;
  }
  throw PreconditionError("sampler is not a Poisson process");
}

CountingMeasure sample_hawkes_cluster(const SamplerSpec& spec, RngStream& stream) {
  const HawkesExp& h = hawkes_of(spec);
  const double horizon = spec.space.side();
  std::vector<double> points;
  const auto immigrants = stream.poisson(h.baseline * horizon);
  for (std::uint64_t i = 0; i < immigrants; ++i)
    points.push_back(std::min(horizon, horizon * stream.uniform()));
  guard_cascade(points.size());
  // Breadth-first over generations; `points` doubles as the queue.
  for (std::size_t next = 0; next < points.size(); ++next) {
    if (h.branching == 0.0) break;
    const double parent = points[next];
    const double window = horizon - parent;
    const double mass_in_window = -std::expm1(-h.decay * window);  // 1 - e^{-b (T - t)}
    const auto children = stream.poisson(h.branching * mass_in_window);
    for (std::uint64_t c = 0; c < children; ++c) {
      // Inverse CDF of the exponential truncated to [0, window].
      const double offset = -std::log1p(-stream.uniform() * mass_in_window) / h.decay;
      points.push_back(std::min(horizon, parent + offset));
    }
    guard_cascade(points.size());
  }
  std::sort(points.begin(), points.end());
  return CountingMeasure(std::move(points), 1);
}

CountingMeasure sample_hawkes_thinning(const SamplerSpec& spec, RngStream& stream) {
  const HawkesExp& h = hawkes_of(spec);
  const double horizon = spec.space.side();
  std::vector<double> points;
  double t = 0.0;
  double excitation = 0.0;  // sum over past events of h(t - t_i)
  for (;;) {
    const double bound = h.baseline + excitation;  // intensity only decays until the next event
    if (!(bound > 0.0)) break;
    const double wait = stream.exponential(bound);
    t += wait;
    if (t > horizon) break;
    excitation *= std::exp(-h.decay * wait);
    if (stream.uniform() * bound < h.baseline + excitation) {
      points.push_back(t);
      excitation += h.branching * h.decay;
      guard_cascade(points.size());
    }
  }
  return CountingMeasure(std::move(points), 1);
}

CountingMeasure sample(const SamplerSpec& spec, RngStream& stream) {
  return std::visit(Overloaded{
                        [&](const HomogeneousPoisson&) { return sample_poisson(spec, stream); },
                        [&](const InhomogeneousPoisson&) { return sample_poisson(spec, stream); },
                        [&](const HawkesExp&) { return sample_hawkes_cluster(spec, stream); },
                        [&](const Deterministic& d) { return d.measures.front(); },
                    },
                    spec.variant);
}

std::vector<CountingMeasure> sample_many(const SamplerSpec& spec, RngStream& stream,
                                         std::size_t n) {
  std::vector<CountingMeasure> out;
  out.reserve(n);
  if (const auto* d = std::get_if<Deterministic>(&spec.variant)) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(d->measures[i % d->measures.size()]);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample(spec, stream));
  return out;
}

std::int64_t sample_borel(double mu, RngStream& stream) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("borel parameter must lie in (0, 1)");
  std::int64_t total = 1;
  std::int64_t frontier = 1;
  while (frontier > 0) {
    std::int64_t next = 0;
    for (std::int64_t i = 0; i < frontier; ++i) next += static_cast<std::int64_t>(stream.poisson(mu));
    total += next;
    frontier = next;
    if (total > static_cast<std::int64_t>(kMaxCascadePoints))
      throw RunawayCascadeError("Galton-Watson tree exceeded the size cap");
  }
  return total;
}

TailFit fit_tail(std::span<const CountingMeasure> samples) {
  std::vector<std::size_t> counts;
  counts.reserve(samples.size());
  for (const auto& mu : samples) counts.push_back(mu.size());
  return fit_tail_counts(counts);
}

TailFit fit_tail_counts(std::span<const std::size_t> counts) {
  if (counts.size() < 100) throw PreconditionError("fit_tail needs at least 100 samples");
  std::map<std::size_t, std::size_t> freq;
  for (auto c : counts) ++freq[c];
  if (freq.size() < 2) throw DegenerateFitError("every sample has the same number of points");

  const double total = static_cast<double>(counts.size());
  // survival[m] = #{samples with at least m points}, for observed m.
  std::vector<std::pair<double, double>> survival;  // (m, count)
  double above = total;
  for (const auto& [m, f] : freq) {
    survival.emplace_back(static_cast<double>(m), above);
    above -= static_cast<double>(f);
  }
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [m, s] : survival) {
    const double y = std::log(s / total);
    sw += s;
    sx += s * m;
    sy += s * y;
    sxx += s * m * m;
    sxy += s * m * y;
  }
  const double denom = sw * sxx - sx * sx;
  if (!(denom > 0.0)) throw DegenerateFitError("survival fit is singular");
  const double slope = (sw * sxy - sx * sy) / denom;
  TailFit fit;
  fit.lambda = -slope;
  if (!(fit.lambda > 0.0)) throw DegenerateFitError("fitted tail does not decay");
  for (const auto& [m, f] : freq) {
    const double pmf = static_cast<double>(f) / total;
    fit.k1 = std::max(fit.k1, pmf * std::exp(fit.lambda * static_cast<double>(m)));
  }
  return fit;
}

}  // namespace ppw
