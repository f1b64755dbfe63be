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

#include "ppw/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ppw/errors.hpp"

namespace ppw {
namespace {

struct Fraction {
  std::int64_t num;
  std::int64_t den;
};

// Best rational approximation with denominator <= cap, or den = 0 if none is
// within tolerance.
Fraction rationalize(double x, std::int64_t cap) {
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_f = std::floor(r);
    if (a_f > static_cast<double>(cap)) break;
    const auto a = static_cast<std::int64_t>(a_f);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > cap) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-12) return {h1, k1};
    const double frac = r - a_f;
    if (frac <= 0.0) break;
    r = 1.0 / frac;
  }
  return {0, 0};
}

}  // namespace

IntegerMasses to_integer_masses(std::span<const double> weights, std::int64_t max_denominator) {
  std::vector<Fraction> fracs;
  fracs.reserve(weights.size());
  std::int64_t lcd = 1;
  for (double w : weights) {
    if (!(w > 0.0) || w > 1.0) throw UnsupportedWeightsError("weights must lie in (0, 1]");
    const Fraction f = rationalize(w, max_denominator);
    if (f.den == 0) throw UnsupportedWeightsError("weight is not a fraction with a small denominator");
    lcd = std::lcm(lcd, f.den);
    if (lcd > max_denominator)
      throw UnsupportedWeightsError("common weight denominator exceeds the cap");
    fracs.push_back(f);
  }
  IntegerMasses out;
  out.denominator = lcd;
  std::int64_t total = 0;
  for (const auto& f : fracs) {
    out.masses.push_back(f.num * (lcd / f.den));
    total += out.masses.back();
  }
  if (total != lcd) throw UnsupportedWeightsError("weights do not sum to one");
  return out;
}

TransportSolution solve_transport(std::span<const std::int64_t> supply,
                                  std::span<const std::int64_t> demand, const Matrix& cost) {
  const std::size_t ns = supply.size();
  const std::size_t nt = demand.size();
  if (cost.rows() != ns || cost.cols() != nt)
    throw PreconditionError("transport cost matrix does not match the marginals");
  const std::int64_t total_supply = std::accumulate(supply.begin(), supply.end(), std::int64_t{0});
  const std::int64_t total_demand = std::accumulate(demand.begin(), demand.end(), std::int64_t{0});
  if (total_supply != total_demand) throw PreconditionError("transport marginals have unequal mass");
  if (std::any_of(supply.begin(), supply.end(), [](auto s) { return s < 0; }) ||
      std::any_of(demand.begin(), demand.end(), [](auto s) { return s < 0; }))
    throw PreconditionError("transport marginals must be nonnegative");
  for (double c : cost.data())
    if (!(c >= 0.0) || !std::isfinite(c))
      throw PreconditionError("transport costs must be finite and nonnegative");

  // Nodes 0..ns-1 are sources, ns..ns+nt-1 sinks. Forward arcs source->sink
  // are uncapacitated; a backward arc sink->source exists while it carries flow.
  const std::size_t nodes = ns + nt;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::int64_t> excess(supply.begin(), supply.end());
  std::vector<std::int64_t> deficit(demand.begin(), demand.end());
  std::vector<std::int64_t> flow(ns * nt, 0);
  std::vector<double> potential(nodes, 0.0);
  std::vector<double> dist(nodes);
  std::vector<std::size_t> parent(nodes);
  std::vector<char> done(nodes);

  std::int64_t remaining = total_supply;
  while (remaining > 0) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), kNone);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < ns; ++i)
      if (excess[i] > 0) dist[i] = 0.0;

    std::size_t target = kNone;
    for (;;) {
      std::size_t u = kNone;
      double best = kInf;
      for (std::size_t v = 0; v < nodes; ++v)
        if (!done[v] && dist[v] < best) {
          best = dist[v];
          u = v;
        }
      if (u == kNone) break;
      done[u] = 1;
      if (u >= ns && deficit[u - ns] > 0) {
        target = u;
        break;
      }
      if (u < ns) {
        const auto row = cost.row(u);
        for (std::size_t j = 0; j < nt; ++j) {
          const std::size_t v = ns + j;
          if (done[v]) continue;
          const double rc = std::max(0.0, row[j] + potential[u] - potential[v]);
          if (dist[u] + rc < dist[v]) {
            dist[v] = dist[u] + rc;
            parent[v] = u;
          }
        }
      } else {
        const std::size_t j = u - ns;
        for (std::size_t i = 0; i < ns; ++i) {
          if (done[i] || flow[i * nt + j] == 0) continue;
          const double rc = std::max(0.0, -cost(i, j) + potential[u] - potential[i]);
          if (dist[u] + rc < dist[i]) {
            dist[i] = dist[u] + rc;
            parent[i] = u;
          }
        }
      }
    }
    if (target == kNone) throw std::logic_error("transport: no augmenting path");

    const double reach = dist[target];
    for (std::size_t v = 0; v < nodes; ++v) potential[v] += std::min(dist[v], reach);

    // Bottleneck along the path back to a source with excess.
    std::int64_t amount = deficit[target - ns];
    std::size_t v = target;
    while (parent[v] != kNone) {
      const std::size_t u = parent[v];
      if (u >= ns) amount = std::min(amount, flow[v * nt + (u - ns)]);  // backward arc
      v = u;
    }
    amount = std::min(amount, excess[v]);

    v = target;
    while (parent[v] != kNone) {
      const std::size_t u = parent[v];
      if (u < ns)
        flow[u * nt + (v - ns)] += amount;
      else
        flow[v * nt + (u - ns)] -= amount;
      v = u;
    }
    excess[v] -= amount;
    deficit[target - ns] -= amount;
    remaining -= amount;
  }

  TransportSolution sol;
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      const std::int64_t f = flow[i * nt + j];
      if (f == 0) continue;
      sol.flows.push_back({i, j, f});
      sol.total_cost += static_cast<double>(f) * cost(i, j);
    }
  return sol;
}

}  // namespace ppw
