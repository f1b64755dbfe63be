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

#include "ppw/pmf.hpp"

#include <cmath>

#include "ppw/errors.hpp"

namespace ppw {

double log_factorial(std::int64_t m) {
  if (m < 0) throw DomainError("factorial of a negative integer");
  return std::lgamma(static_cast<double>(m) + 1.0);
}

double poisson_pmf(double mean, std::int64_t m) {
  if (!(mean >= 0.0)) throw DomainError("poisson mean must be nonnegative");
  if (m < 0) return 0.0;
  if (mean == 0.0) return m == 0 ? 1.0 : 0.0;
  const double md = static_cast<double>(m);
  return std::exp(-mean + md * std::log(mean) - log_factorial(m));
}

double borel_pmf(double mu, std::int64_t m) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("borel parameter must lie in (0, 1)");
  if (m < 1) throw DomainError("borel support starts at m = 1");
  const double md = static_cast<double>(m);
  return std::exp(-mu * md + (md - 1.0) * std::log(mu * md) - log_factorial(m));
}

}  // namespace ppw
