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

#ifndef PPW_TRANSPORT_HPP_
#define PPW_TRANSPORT_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ppw/matrix.hpp"

namespace ppw {

// Largest common denominator accepted when scaling weights to integers.
inline constexpr std::int64_t kMaxWeightDenominator = 1'000'000;

struct IntegerMasses {
  std::vector<std::int64_t> masses;  // sum to denominator
  std::int64_t denominator = 1;
};

// Writes each weight as p_i / q_i (continued fractions, q_i <= cap, exact to
// 1e-12) and rescales by the least common denominator. Throws
// UnsupportedWeightsError when that denominator exceeds the cap.
IntegerMasses to_integer_masses(std::span<const double> weights,
                                std::int64_t max_denominator = kMaxWeightDenominator);

// Integer flow on the arc (source, sink).
struct FlowEntry {
  std::size_t source;
  std::size_t sink;
  std::int64_t amount;
};

struct TransportSolution {
  // sum_ij flow_ij cost_ij, in units of the integer masses.
  double total_cost = 0.0;
  std::vector<FlowEntry> flows;
};

// Exact transportation problem by successive shortest paths with Dijkstra on
// reduced costs. supply.size() == cost.rows(), demand.size() == cost.cols(),
// equal totals, nonnegative finite costs.
TransportSolution solve_transport(std::span<const std::int64_t> supply,
                                  std::span<const std::int64_t> demand, const Matrix& cost);

}  // namespace ppw

#endif  // PPW_TRANSPORT_HPP_
