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

#include "ppw/pp_wasserstein.hpp"

#include <cmath>
#include <numeric>

#include "ppw/assignment.hpp"
#include "ppw/errors.hpp"
#include "ppw/parallel.hpp"
#include "ppw/transport.hpp"

namespace ppw {
namespace {

void require_order(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("Wasserstein order p must be >= 1");
}

double root(double value, double p) {
  if (value <= 0.0) return 0.0;
  return p == 1.0 ? value : std::pow(value, 1.0 / p);
}

}  // namespace

EmpiricalLaw EmpiricalLaw::uniform(std::vector<CountingMeasure> atoms) {
  if (atoms.empty()) throw PreconditionError("an empirical law needs at least one atom");
  EmpiricalLaw law;
  const double w = 1.0 / static_cast<double>(atoms.size());
  law.weights_.assign(atoms.size(), w);
  law.atoms_ = std::move(atoms);
  law.uniform_ = true;
  return law;
}

EmpiricalLaw::EmpiricalLaw(std::vector<CountingMeasure> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw PreconditionError("an empirical law needs at least one atom");
  if (atoms_.size() != weights_.size())
    throw PreconditionError("one weight per atom is required");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw PreconditionError("weights must be strictly positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("weights must sum to one");
  const double w0 = 1.0 / static_cast<double>(weights_.size());
  uniform_ = std::all_of(weights_.begin(), weights_.end(),
                         [&](double w) { return std::abs(w - w0) <= 1e-15; });
}

Matrix pairwise_costs(const GroundSpace& space, const EmpiricalLaw& a, const EmpiricalLaw& b,
                      double p, unsigned threads) {
  require_order(p);
  for (const auto& mu : a.atoms()) check_measure(space, mu);
  for (const auto& mu : b.atoms()) check_measure(space, mu);
  Matrix c(a.size(), b.size());
  parallel_for(a.size(), threads, [&](std::size_t i) {
    auto row = c.row(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = d1_fast(space, a.atoms()[i], b.atoms()[j]);
      row[j] = p == 1.0 ? d : std::pow(d, p);
    }
  });
  return c;
}

double wp_equal_from_costs(const Matrix& costs, double p) {
  require_order(p);
  if (costs.rows() != costs.cols() || costs.rows() == 0)
    throw PreconditionError("wp_equal needs a nonempty square cost matrix");
  const double mean = solve_assignment(costs).cost / static_cast<double>(costs.rows());
  return root(mean, p);
}

double wp_equal(const GroundSpace& space, const EmpiricalLaw& a, const EmpiricalLaw& b, double p,
                unsigned threads) {
  if (!a.is_uniform() || !b.is_uniform())
    throw PreconditionError("wp_equal needs uniform weights");
  if (a.size() != b.size()) throw PreconditionError("wp_equal needs laws of equal size");
  return wp_equal_from_costs(pairwise_costs(space, a, b, p, threads), p);
}

double wp_general_from_costs(const Matrix& costs, const EmpiricalLaw& a, const EmpiricalLaw& b,
                             double p) {
  require_order(p);
  const IntegerMasses ma = to_integer_masses(a.weights());
  const IntegerMasses mb = to_integer_masses(b.weights());
  const std::int64_t common = std::lcm(ma.denominator, mb.denominator);
  if (common > kMaxWeightDenominator)
    throw UnsupportedWeightsError("common weight denominator exceeds the cap");
  std::vector<std::int64_t> supply, demand;
  for (auto m : ma.masses) supply.push_back(m * (common / ma.denominator));
  for (auto m : mb.masses) demand.push_back(m * (common / mb.denominator));
  const TransportSolution sol = solve_transport(supply, demand, costs);
  return root(sol.total_cost / static_cast<double>(common), p);
}

double wp_general(const GroundSpace& space, const EmpiricalLaw& a, const EmpiricalLaw& b,
                  double p, unsigned threads) {
  return wp_general_from_costs(pairwise_costs(space, a, b, p, threads), a, b, p);
}

std::string Estimator::name() const {
  return kind == EstimatorKind::kIndependentPair ? "independent_pair" : "proxy_reference";
}

std::string Estimator::bias_note() const {
  if (kind == EstimatorKind::kIndependentPair)
    return "E W_p(L_n, L'_n) <= 2 E W_p(L_n, L) by the triangle inequality";
  return "E W_p(L_n, L_N) <= E W_p(L_n, L) + E W_p(L_N, L)";
}

double wp_two_sample(const SamplerSpec& spec, std::size_t n, const Estimator& estimator, double p,
                     std::uint64_t master_seed, std::uint64_t first_stream, unsigned threads) {
  require_order(p);
  if (n < 1) throw PreconditionError("sample size must be at least 1");
  RngStream first(master_seed, first_stream);
  RngStream second(master_seed, first_stream + 1);
  if (estimator.kind == EstimatorKind::kIndependentPair) {
    auto a = EmpiricalLaw::uniform(sample_many(spec, first, n));
    auto b = EmpiricalLaw::uniform(sample_many(spec, second, n));
    return wp_equal(spec.space, a, b, p, threads);
  }
  const std::size_t big = estimator.reference_size;
  if (big < n) throw PreconditionError("proxy reference size N must be >= n");
  if (big > kMaxReferenceSize) throw PreconditionError("proxy reference size N exceeds 16384");
  auto a = EmpiricalLaw::uniform(sample_many(spec, first, n));
  auto b = EmpiricalLaw::uniform(sample_many(spec, second, big));
  return wp_general(spec.space, a, b, p, threads);
}

}  // namespace ppw
