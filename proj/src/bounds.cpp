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

#include "ppw/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppw/errors.hpp"
#include "ppw/pmf.hpp"

namespace ppw {
namespace {

void require_rate_inputs(double n, const RateParams& params) {
  if (!(n >= 3.0)) throw DomainError("rate formulas need n >= 3");
  if (!(params.p >= 1.0)) throw DomainError("Wasserstein order p must be >= 1");
  if (!(params.lambda_tail > 0.0)) throw DomainError("tail rate lambda must be positive");
}

void require_lower_inputs(const RateParams& params) {
  if (!(params.kappa > 0.0 && params.kappa < params.sigma))
    throw DomainError("lower bounds need 0 < kappa < sigma");
  if (!(params.k2 > 0.0)) throw DomainError("K2 must be positive");
  if (!(params.alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(params.p >= 1.0)) throw DomainError("Wasserstein order p must be >= 1");
}

}  // namespace

double log_covering_bound_nm(std::int64_t m, std::int64_t covering_s) {
  if (m < 1 || covering_s < 1) throw DomainError("covering bound needs m >= 1 and M_S >= 1");
  const double md = static_cast<double>(m);
  return md + md * std::log1p(static_cast<double>(covering_s) / md);
}

double covering_bound_nm(std::int64_t m, std::int64_t covering_s) {
  return std::exp(log_covering_bound_nm(m, covering_s));
}

double upper_rate(double n, const RateParams& params) {
  require_rate_inputs(n, params);
  const double dim_eff = params.dim_m + params.kappa;
  if (!(dim_eff > 0.0)) throw DomainError("dim_M + kappa must be positive");
  const double log_n = std::log(n);
  const double loglog = std::max(std::log(log_n), 0.0);
  const double p = params.p;
  return std::exp((1.0 + 1.0 / (2.0 * p)) * loglog -
                  2.0 * std::sqrt(params.lambda_tail / (p * dim_eff)) * std::sqrt(log_n));
}

double upper_rate_interval(double n, const RateParams& params) {
  require_rate_inputs(n, params);
  const double log_n = std::log(n);
  const double loglog = std::max(std::log(log_n), 0.0);
  const double p = params.p;
  return std::exp((0.5 + 1.0 / (2.0 * p)) * loglog -
                  2.0 * std::sqrt(params.lambda_tail / p) * std::sqrt(log_n));
}

double upper_rate_poisson(double n, double lambda_mass, double dim_m, double kappa, double p,
                          double chi) {
  if (!(n >= 16.0)) throw DomainError("Poisson rate needs n >= 16");
  if (!(chi >= 0.0 && chi < 1.0)) throw DomainError("chi must lie in [0, 1)");
  if (!(p >= 1.0)) throw DomainError("Wasserstein order p must be >= 1");
  if (!(dim_m + kappa > 0.0)) throw DomainError("dim_M + kappa must be positive");
  if (!(lambda_mass > 0.0)) throw DomainError("Poisson mass must be positive");
  // The mass only enters the constant C.
  const double log_n = std::log(n);
  return std::exp(-(1.0 - chi) * std::sqrt(2.0 / (p * (dim_m + kappa))) *
                  std::sqrt(log_n * std::log(log_n)));
}

double rate_exponent(double n, double lambda, double p, double dim_eff) {
  if (!(dim_eff > 0.0)) throw DomainError("effective dimension must be positive");
  return -2.0 * std::sqrt(lambda * std::log(n) / (p * dim_eff));
}

std::int64_t lower_rate_max_m(double n) {
  if (!(n >= 1.0)) return 0;
  return static_cast<std::int64_t>(std::floor(std::pow(std::log(n), 2.0 / 3.0)));
}

double log_lower_window(std::int64_t m, const RateParams& params) {
  require_lower_inputs(params);
  if (m < 1) throw DomainError("window needs m >= 1");
  const double s = params.sigma, k = params.kappa;
  const double md = static_cast<double>(m);
  const double log_edge = (s / k) * std::log(2.0) - std::log(params.k2) / k -
                          (std::log(2.0) + log_factorial(m)) / (md * k);
  return std::min(log_edge, std::log(params.alpha));
}

double lower_window(std::int64_t m, const RateParams& params) {
  return std::exp(log_lower_window(m, params));
}

double covering_lower(double eps, std::int64_t m, const RateParams& params) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const double log_edge = log_lower_window(m, params);
  if (std::log(eps) > log_edge)
    throw WindowViolationError("eps above the covering lower-bound window edge " +
                                   std::to_string(std::exp(log_edge)),
                               std::exp(log_edge));
  return std::pow(eps, -static_cast<double>(m) * (params.sigma - params.kappa));
}

ValidityCheck validity_threshold(const RateParams& params, double n) {
  require_lower_inputs(params);
  ValidityCheck out;
  const std::int64_t m_max = lower_rate_max_m(n);
  if (m_max < 1) {
    out.no_admissible_m = true;
    return out;
  }
  const double log_n = std::log(n);
  out.valid = true;
  out.log_threshold = -std::numeric_limits<double>::infinity();
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const double log_thr =
        -static_cast<double>(m) * (params.sigma - params.kappa) * log_lower_window(m, params);
    out.log_threshold = std::max(out.log_threshold, log_thr);
    if (!(log_n > log_thr)) out.valid = false;
  }
  return out;
}

LowerRate lower_rate(double n, const RateParams& params, const CountPmf& count_pmf) {
  require_lower_inputs(params);
  const std::int64_t m_max = lower_rate_max_m(n);
  const double p = params.p;
  const double gap = params.sigma - params.kappa;
  const double log_n = std::log(n);
  double best_log = -std::numeric_limits<double>::infinity();
  LowerRate out;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const double mass = count_pmf(m);
    if (!(mass > 0.0)) continue;
    const double term = std::log(mass) / p - log_n / (static_cast<double>(m) * gap);
    if (term > best_log) {
      best_log = term;
      out.argmax_m = m;
    }
  }
  if (out.argmax_m == 0)
    throw EmptySupportError("no admissible m <= floor((log n)^{2/3}) has positive mass");
  const double log_wp = (-2.0 - 1.0 / p) * std::log(2.0) + best_log;
  out.w_p = std::exp(log_wp);
  out.w_p_pow_p = std::exp(p * log_wp);
  out.valid = validity_threshold(params, n).valid;
  return out;
}

LowerRate lower_rate_poisson(double n, const RateParams& params, double mean) {
  return lower_rate(n, params, [mean](std::int64_t m) { return poisson_pmf(mean, m); });
}

double concentration_bound(double eps, double n, const RateParams& params) {
  const double p = params.p;
  if (!(p >= 1.0 && p < 2.0)) throw OutOfRegimeError("concentration needs 1 <= p < 2");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (!(n >= 1.0)) throw DomainError("n must be >= 1");
  const double lam = params.lambda_tail;
  if (!(lam > 0.0) || !(params.k1 > 0.0)) throw DomainError("tail constants must be positive");
  const double spread = params.diam + params.alpha;
  const double variance_term =
      16.0 * params.k1 * std::exp(lam) * spread * spread * std::pow(n, 1.0 - 2.0 / p);
  const double scale_term = 4.0 * lam * lam * eps * spread * std::pow(n, -1.0 / p);
  return std::exp(-eps * eps * lam * lam * lam / (variance_term + scale_term));
}

double concentration_bound_two_sided(double eps, double n, const RateParams& params) {
  return std::min(1.0, 2.0 * concentration_bound(eps, n, params));
}

std::uint64_t min_sample_size(double target_eps, const RateParams& params) {
  if (!(target_eps > 0.0 && target_eps < 1.0)) throw DomainError("target eps must lie in (0, 1)");
  if (!(params.lambda_tail > 0.0)) throw DomainError("tail rate lambda must be positive");
  const double dim_eff = params.dim_m + 2.0 * params.kappa;
  const double log_inv = std::log(1.0 / target_eps);
  const double log_n = params.p * dim_eff * log_inv * log_inv / (4.0 * params.lambda_tail);
  if (log_n > 43.0) throw std::overflow_error("required sample size exceeds 2^62");
  auto n = static_cast<std::uint64_t>(std::ceil(std::exp(log_n)));
  n = std::max<std::uint64_t>(n, 1);
  while (n > 1 && std::log(static_cast<double>(n - 1)) >= log_n) --n;
  return n;
}

}  // namespace ppw
