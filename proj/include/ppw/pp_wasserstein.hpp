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

#ifndef PPW_PP_WASSERSTEIN_HPP_
#define PPW_PP_WASSERSTEIN_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ppw/counting_measure.hpp"
#include "ppw/matrix.hpp"
#include "ppw/samplers.hpp"

namespace ppw {

// A finitely supported probability law on the space of counting measures.
// Any such law has finite moments of every order, so W_p is always defined.
class EmpiricalLaw {
 public:
  // Uniform weights 1/n: the empirical measure of n realizations.
  static EmpiricalLaw uniform(std::vector<CountingMeasure> atoms);
  // Weights must be positive and sum to 1 within 1e-12.
  EmpiricalLaw(std::vector<CountingMeasure> atoms, std::vector<double> weights);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<CountingMeasure>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  bool is_uniform() const { return uniform_; }

 private:
  EmpiricalLaw() = default;

  std::vector<CountingMeasure> atoms_;
  std::vector<double> weights_;
  bool uniform_ = false;
};

// C[i][j] = D1(A_i, B_j)^p. Entries are computed independently, so the
// matrix is bit-identical for every thread count.
Matrix pairwise_costs(const GroundSpace& space, const EmpiricalLaw& a, const EmpiricalLaw& b,
                      double p, unsigned threads = 1);

// W_p between two uniform laws of equal size n:
// ((1/n) min_pi sum_i D1(A_i, B_pi(i))^p)^{1/p}.
double wp_equal(const GroundSpace& space, const EmpiricalLaw& a, const EmpiricalLaw& b, double p,
                unsigned threads = 1);
// Same, from a precomputed cost matrix of p-th powers.
double wp_equal_from_costs(const Matrix& costs, double p);

// W_p between arbitrary finitely supported laws by exact min-cost flow after
// scaling the weights to integers (common denominator <= 10^6).
double wp_general(const GroundSpace& space, const EmpiricalLaw& a, const EmpiricalLaw& b,
                  double p, unsigned threads = 1);
double wp_general_from_costs(const Matrix& costs, const EmpiricalLaw& a, const EmpiricalLaw& b,
                             double p);

enum class EstimatorKind { kIndependentPair, kProxyReference };

struct Estimator {
  EstimatorKind kind = EstimatorKind::kIndependentPair;
  std::size_t reference_size = 0;  // N, proxy_reference only

  std::string name() const;
  // How the estimate relates to E W_p(L_n, L).
  std::string bias_note() const;
};

// Upper limit on N for the proxy_reference estimator.
inline constexpr std::size_t kMaxReferenceSize = 16384;

// Estimate of E W_p(L_n, L) from two samples drawn on streams
// (master_seed, first_stream) and (master_seed, first_stream + 1).
// independent_pair: two size-n samples, wp_equal between them.
// proxy_reference: a size-n and a size-N sample, wp_general between them.
double wp_two_sample(const SamplerSpec& spec, std::size_t n, const Estimator& estimator, double p,
                     std::uint64_t master_seed, std::uint64_t first_stream = 0,
                     unsigned threads = 1);

}  // namespace ppw

#endif  // PPW_PP_WASSERSTEIN_HPP_
