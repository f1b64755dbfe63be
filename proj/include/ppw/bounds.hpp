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

#ifndef PPW_BOUNDS_HPP_
#define PPW_BOUNDS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace ppw {

// Constants feeding the rate and concentration formulas.
//
// Every rate below is a *shape*: the theorems only assert existence of the
// multiplicative constants, which are set to 1 here. Compare exponents and
// slopes against experiments, never absolute levels.
struct RateParams {
  double p = 1.0;            // Wasserstein order
  double kappa = 0.1;        // slack in the dimension exponent
  double dim_m = 1.0;        // Minkowski dimension of S
  double lambda_tail = 1.0;  // P(|eta| = m) <= k1 e^{-lambda_tail m}
  double k1 = 1.0;
  double sigma = 1.0;  // local dimension of the Janossy dominating measure
  double k2 = 2.0;     // theta(ball(x, eps)) <= k2 eps^sigma
  std::optional<double> k3;  // P(|eta| = m) >= k3 e^{-lambda m}, unused by the formulas
  double alpha = 1.0;
  double diam = 1.0;
};

// e^m (1 + M_S / m)^m: upper bound on the eps-covering number of the
// measures with exactly m points, given M_S = covering_number(eps / m) of S.
double log_covering_bound_nm(std::int64_t m, std::int64_t covering_s);
double covering_bound_nm(std::int64_t m, std::int64_t covering_s);

// e^{(1 + 1/(2p)) log log n} e^{-2 sqrt(lambda / (p (dim + kappa))) sqrt(log n)}.
// Needs n >= 3.
double upper_rate(double n, const RateParams& params);
// Refinement for S = [0, b]:
// e^{(1/2 + 1/(2p)) log log n} e^{-2 sqrt(lambda / p) sqrt(log n)}.
double upper_rate_interval(double n, const RateParams& params);
// Poisson refinement, e^{-(1 - chi) sqrt(2 / (p (dim + kappa))) sqrt(log n log log n)}.
// Needs n >= 16 and chi in [0, 1).
double upper_rate_poisson(double n, double lambda_mass, double dim_m, double kappa, double p,
                          double chi);

// -2 sqrt(lambda log n / (p dim_eff)), the exponent shared by the upper
// (dim_eff = dim + kappa) and lower (dim_eff = dim - kappa) rates.
double rate_exponent(double n, double lambda, double p, double dim_eff);

// Largest admissible point count in the lower bound: floor((log n)^{2/3}).
std::int64_t lower_rate_max_m(double n);

// Upper end of the eps-window on which the covering lower bound holds:
// 2^{sigma/kappa} / (k2^{1/kappa} (2 m!)^{1/(m kappa)}) ^ alpha, via logs.
double log_lower_window(std::int64_t m, const RateParams& params);
double lower_window(std::int64_t m, const RateParams& params);

// eps^{-m (sigma - kappa)} for eps inside the window (the edge is included);
// throws WindowViolationError otherwise.
double covering_lower(double eps, std::int64_t m, const RateParams& params);

struct ValidityCheck {
  bool valid = false;
  bool no_admissible_m = false;
  // Smallest n that clears the per-m thresholds for every m checked, as a log.
  double log_threshold = 0.0;
};

// True when n > window(m)^{-m (sigma - kappa)} for every 1 <= m <= floor((log n)^{2/3}).
// An empty range of m yields false with no_admissible_m set.
ValidityCheck validity_threshold(const RateParams& params, double n);

using CountPmf = std::function<double(std::int64_t)>;

struct LowerRate {
  double w_p = 0.0;        // bound on W_p
  double w_p_pow_p = 0.0;  // bound on W_p^p
  std::int64_t argmax_m = 0;
  bool valid = false;  // validity_threshold(params, n)
};

// 2^{-2-1/p} sup_{1 <= m <= floor((log n)^{2/3}), pmf(m) > 0} pmf(m)^{1/p} n^{-1/(m (sigma - kappa))}.
// Throws EmptySupportError if no admissible m has positive mass.
LowerRate lower_rate(double n, const RateParams& params, const CountPmf& count_pmf);
// Same with the Poisson(mean) count pmf evaluated in closed form.
LowerRate lower_rate_poisson(double n, const RateParams& params, double mean);

// One-sided tail bound
// exp(-eps^2 lambda^3 / (16 k1 e^lambda (diam + alpha)^2 n^{1-2/p}
//                        + 4 lambda^2 eps (diam + alpha) n^{-1/p})).
// Valid for 1 <= p < 2 only.
double concentration_bound(double eps, double n, const RateParams& params);
// min(1, 2 * concentration_bound).
double concentration_bound_two_sided(double eps, double n, const RateParams& params);

// Smallest n with e^{-2 sqrt(lambda / (p (dim + 2 kappa))) sqrt(log n)} <= target_eps.
std::uint64_t min_sample_size(double target_eps, const RateParams& params);

// Metadata attached to every emitted rate.
inline constexpr const char* kRateShapeNote = "rate shape: up to an unknown constant C";

}  // namespace ppw

#endif  // PPW_BOUNDS_HPP_
