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

#ifndef PPW_PMF_HPP_
#define PPW_PMF_HPP_

#include <cstdint>

namespace ppw {

// log(m!) via log-gamma.
double log_factorial(std::int64_t m);

// e^{-mean} mean^m / m!, evaluated in log space.
double poisson_pmf(double mean, std::int64_t m);

// Borel law of the total progeny of a Galton-Watson tree with Poisson(mu)
// offspring: e^{-mu m} (mu m)^{m-1} / m!. Requires 0 < mu < 1 and m >= 1.
double borel_pmf(double mu, std::int64_t m);

}  // namespace ppw

#endif  // PPW_PMF_HPP_
