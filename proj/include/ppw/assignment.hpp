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

#ifndef PPW_ASSIGNMENT_HPP_
#define PPW_ASSIGNMENT_HPP_

#include <cstddef>
#include <vector>

#include "ppw/matrix.hpp"

namespace ppw {

struct Assignment {
  // Sum of cost(r, row_to_col[r]) accumulated in row order.
  double cost = 0.0;
  std::vector<std::size_t> row_to_col;
};

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// by shortest augmenting paths with dual potentials. O(rows^2 * cols).
// Costs must be finite.
Assignment solve_assignment(const Matrix& cost);

}  // namespace ppw

#endif  // PPW_ASSIGNMENT_HPP_
