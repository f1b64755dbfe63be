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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "ppw/bounds.hpp"
#include "ppw/counting_measure.hpp"
#include "ppw/experiments.hpp"
#include "ppw/pmf.hpp"
#include "ppw/pp_wasserstein.hpp"
#include "ppw/samplers.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace ppw;
using ppw::testing::brute_force_assignment;
using ppw::testing::brute_force_d1_interval;
using ppw::testing::random_scalar_measure;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

fs::path g_workdir;

// Shared by criteria 6 and 7.
const ConvergenceResult& convergence_run() {
  static const ConvergenceResult result = [] {
    ExperimentConfig c;
    c.experiment = ExperimentKind::kConvergence;
    c.space = "interval";
    c.T = 1.0;
    c.alpha = 1.0;
    c.sampler = "poisson";
    c.lambda = 1.0;
    c.p = 1.0;
    c.n_grid = {16, 32, 64, 128, 256, 512, 1024};
    c.replications = 20;
    c.master_seed = 20260101;
    c.threads = 0;
    c.output_dir = (g_workdir / "convergence").string();
    run_experiment(c);
    ConvergenceResult r;
    const auto raw = read_csv(g_workdir / "convergence" / "raw.csv");
    const auto cn = raw.column("n"), cr = raw.column("replication"), cw = raw.column("w_p"),
               cl = raw.column("lower_rate"), cv = raw.column("lower_rate_valid");
    for (const auto& row : raw.rows) {
      ResultRow x;
      x.n = std::stoull(row[cn]);
      x.replication = std::stoull(row[cr]);
      x.w_p = std::stod(row[cw]);
      x.lower_rate = std::stod(row[cl]);
      x.lower_rate_valid = row[cv] == "1";
      r.raw.push_back(x);
    }
    r.aggregate = read_aggregate_csv(read_csv(g_workdir / "convergence" / "aggregate.csv"));
    return r;
  }();
  return result;
}

Outcome golden_value() {
  const auto s = GroundSpace::interval(8.0, 1.0);
  const CountingMeasure mu1{0.5, 1.0, 3.8, 7.2}, mu2{0.7, 2.0, 2.0, 5.0, 6.0};
  const double a = d1(s, mu1, mu2), b = d1_sorted_1d(s, mu1, mu2), c = d1_cdf_area(s, mu1, mu2),
               area = cdf_gap_area(s, mu1, mu2);
  const bool ok = std::abs(a - 8.2) <= 1e-12 && std::abs(b - 8.2) <= 1e-12 &&
                  std::abs(c - 8.2) <= 1e-12 && std::abs(area - 1.64) <= 1e-12;
  return {ok, fmt::format("assignment {:.15g}, sorted {:.15g}, cdf {:.15g}, area {:.15g}", a, b, c, area)};
}

// Random measure on the grid {k / 16}: every distance and partial sum is a
// dyadic rational, so floating-point results are exact and can be compared
// with ==.
CountingMeasure dyadic_measure(std::mt19937_64& gen, std::size_t max_size, int cells) {
  std::uniform_int_distribution<std::size_t> size(0, max_size);
  std::uniform_int_distribution<int> cell(0, cells);
  CountingMeasure mu;
  const auto k = size(gen);
  for (std::size_t i = 0; i < k; ++i) mu.add(cell(gen) / 16.0);
  return mu;
}

Outcome oracle_equivalence() {
  std::mt19937_64 gen(2);
  const auto s = GroundSpace::interval(4.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_scalar_measure(gen, 12, 4.0), b = random_scalar_measure(gen, 12, 4.0);
    const double x = d1(s, a, b);
    worst = std::max({worst, std::abs(x - d1_sorted_1d(s, a, b)), std::abs(x - d1_cdf_area(s, a, b))});
  }
  int exact = 0;
  for (int i = 0; i < 200; ++i) {
    const auto a = dyadic_measure(gen, 7, 64), b = dyadic_measure(gen, 7, 64);
    exact += d1(s, a, b) == brute_force_d1_interval(a, b, 1.0, 4.0);
  }
  return {worst <= 1e-9 && exact == 200,
          fmt::format("max fast-path gap {:.3g} over 1000 pairs; {}/200 exact permutation matches", worst, exact)};
}

Outcome metric_axioms() {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto interval = GroundSpace::interval(1.0, 0.5);
  const auto box = GroundSpace::box(2, 1.0, 1.0);
  const auto finite = GroundSpace::finite_metric(Matrix{{0, 1, 2, 2}, {1, 0, 1, 2}, {2, 1, 0, 1}, {2, 2, 1, 0}}, 0.5, 0);
  std::uniform_int_distribution<std::size_t> size(0, 7);
  std::uniform_int_distribution<int> index(0, 3);
  auto draw = [&](const GroundSpace& s) {
    CountingMeasure mu(s.point_dim());
    const auto k = size(gen);
    for (std::size_t i = 0; i < k; ++i) {
      if (s.kind() == GroundSpace::Kind::kBox)
        mu.add(std::vector<double>{u(gen), u(gen)});
      else if (s.kind() == GroundSpace::Kind::kFiniteMetric)
        mu.add(static_cast<double>(index(gen)));
      else
        mu.add(u(gen) < 0.2 && i > 0 ? mu.point(i - 1)[0] : u(gen));
    }
    return mu;
  };
  std::size_t sym = 0, ident = 0, tri = 0, pos = 0, bound = 0, triples = 0;
  double worst_tri = 0.0;
  for (const GroundSpace* s : {&interval, &box, &finite}) {
    const int count = s == &interval ? 6000 : 2000;
    for (int t = 0; t < count; ++t, ++triples) {
      const auto a = draw(*s), b = draw(*s), c = draw(*s);
      const double ab = d1(*s, a, b), ba = d1(*s, b, a), bc = d1(*s, b, c), ac = d1(*s, a, c);
      sym += ab != ba;
      ident += d1(*s, a, a) != 0.0;
      const double excess = ac - (ab + bc);
      worst_tri = std::max(worst_tri, excess);
      tri += excess > 1e-9;
      pos += !same_multiset(a, b) && !(ab > 0.0);
      bound += ab > d1_upper_bound(*s, a, b) + 1e-12;
    }
  }
  const bool ok = sym + ident + tri + pos + bound == 0;
  return {ok, fmt::format("{} triples: symmetry {}, identity {}, triangle {} (max excess {:.2g}), "
                          "positivity {}, upper bound {} violations",
                          triples, sym, ident, tri, worst_tri, pos, bound)};
}

Outcome transport_solvers() {
  std::mt19937_64 gen(4);
  const auto s = GroundSpace::interval(1.0);
  auto atoms = [&](std::size_t n) {
    std::vector<CountingMeasure> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar_measure(gen, 6, 1.0));
    return v;
  };
  // Dyadic atoms keep every coupling cost exact, so == is meaningful even when
  // several couplings tie.
  auto dyadic_atoms = [&](std::size_t n) {
    std::vector<CountingMeasure> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(dyadic_measure(gen, 6, 16));
    return v;
  };
  int exact = 0, total = 0;
  for (double p : {1.0, 2.0}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      for (int t = 0; t < 20; ++t, ++total) {
        const auto a = EmpiricalLaw::uniform(dyadic_atoms(n)), b = EmpiricalLaw::uniform(dyadic_atoms(n));
        const Matrix c = pairwise_costs(s, a, b, p);
        const double want = std::pow(brute_force_assignment(c) / static_cast<double>(n), 1.0 / p);
        exact += wp_equal(s, a, b, p) == want;
      }
    }
  }
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 24;
    const auto a = EmpiricalLaw::uniform(atoms(n)), b = EmpiricalLaw::uniform(atoms(n));
    worst = std::max(worst, std::abs(wp_general(s, a, b, 1.0) - wp_equal(s, a, b, 1.0)));
  }
  return {exact == total && worst <= 1e-9,
          fmt::format("{}/{} exact brute-force coupling matches; max |general - equal| {:.3g} on 200 laws",
                      exact, total, worst)};
}

Outcome samplers() {
  std::vector<std::string> notes;
  bool ok = true;
  // Poisson(1) on [0, 1]: counts 0..5 and >= 6, df 6, 1% critical value 16.812.
  {
    const SamplerSpec spec{HomogeneousPoisson{1.0}, GroundSpace::interval(1.0)};
    RngStream s(5, 0);
    const int n = 100000;
    std::vector<int> cells(7, 0);
    std::vector<double> locs;
    for (int i = 0; i < n; ++i) {
      const auto mu = sample(spec, s);
      ++cells[std::min<std::size_t>(mu.size(), 6)];
      for (std::size_t k = 0; k < mu.size(); ++k) locs.push_back(mu.point(k)[0]);
    }
    double chi2 = 0.0, rest = 1.0;
    for (int m = 0; m <= 6; ++m) {
      const double p = m < 6 ? poisson_pmf(1.0, m) : rest;
      rest -= p;
      chi2 += (cells[m] - n * p) * (cells[m] - n * p) / (n * p);
    }
    const double ks = ppw::testing::ks_uniform(locs);
    const double ks_crit = 1.628 / std::sqrt(static_cast<double>(locs.size()));
    ok = ok && chi2 < 16.812 && ks < ks_crit;
    notes.push_back(fmt::format("count chi2 {:.2f} < 16.812, location KS {:.4f} < {:.4f}", chi2, ks, ks_crit));
  }
  // Borel(0.5): TV over m <= 20 at 1e6 draws, mean 2 with variance 4.
  {
    RngStream s(5, 1);
    const int n = 1000000;
    std::map<std::int64_t, int> freq;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto m = sample_borel(0.5, s);
      ++freq[m];
      sum += static_cast<double>(m);
    }
    double tv = 0.0;
    for (int m = 1; m <= 20; ++m) tv += std::abs(freq[m] / static_cast<double>(n) - borel_pmf(0.5, m));
    tv /= 2;
    const double mean = sum / n, se = std::sqrt(4.0 / n);
    ok = ok && tv < 0.01 && std::abs(mean - 2.0) <= 3 * se;
    notes.push_back(fmt::format("Borel TV {:.4f}, mean {:.4f} (|z| {:.2f})", tv, mean, std::abs(mean - 2.0) / se));
  }
  // Hawkes: cluster vs thinning counts.
  {
    const SamplerSpec spec{HawkesExp{1.0, 0.5, 2.0}, GroundSpace::interval(10.0)};
    RngStream s1(5, 2), s2(5, 3);
    std::vector<double> a, b;
    for (int i = 0; i < 10000; ++i) {
      a.push_back(static_cast<double>(sample_hawkes_cluster(spec, s1).size()));
      b.push_back(static_cast<double>(sample_hawkes_thinning(spec, s2).size()));
    }
    const double ks = ppw::testing::ks_two_sample(a, b), crit = 1.628 * std::sqrt(2.0 / 10000);
    ok = ok && ks < crit;
    notes.push_back(fmt::format("Hawkes count KS {:.4f} < {:.4f}", ks, crit));
  }
  std::string detail;
  for (const auto& n : notes) detail += (detail.empty() ? "" : "; ") + n;
  return {ok, detail};
}

Outcome convergence() {
  const auto& agg = convergence_run().aggregate;
  int inversions = 0;
  for (std::size_t i = 1; i < agg.size(); ++i) inversions += agg[i].mean_w >= agg[i - 1].mean_w;
  const auto fit = fit_rate(agg, Abscissa::kSqrtLogNLogLogN);
  std::string means;
  for (const auto& a : agg) means += fmt::format(" {}:{:.4f}", a.n, a.mean_w);
  return {inversions <= 1 && fit.slope < 0.0 && fit.r_squared >= 0.9,
          fmt::format("{} inversions; slope {:.4f}, r2 {:.4f}; means{}", inversions, fit.slope,
                      fit.r_squared, means)};
}

Outcome almost_sure_lower_bound() {
  const auto& raw = convergence_run().raw;
  std::size_t valid = 0, held = 0, unconditional = 0;
  for (const auto& r : raw) {
    unconditional += r.w_p >= r.lower_rate;
    if (!r.lower_rate_valid) continue;
    ++valid;
    held += r.w_p >= r.lower_rate;
  }
  std::string detail = fmt::format("{}/{} rows in the validity regime hold", held, valid);
  if (valid == 0) detail += " (no grid size passes the validity threshold, so the check is vacuous)";
  detail += fmt::format("; W_1 >= lower_rate on {}/{} rows regardless of validity", unconditional, raw.size());
  return {held == valid, detail};
}

Outcome concentration() {
  ExperimentConfig c;
  c.experiment = ExperimentKind::kConcentration;
  c.lambda = 1.0;
  c.p = 1.0;
  c.n = 256;
  c.replications = 500;
  c.master_seed = 8;
  c.threads = 0;
  const auto r = run_concentration(c);
  std::size_t bad = 0;
  double tightest = 1.0;
  for (const auto& row : r.rows) {
    bad += row.empirical_freq > row.bound;
    tightest = std::min(tightest, row.bound - row.empirical_freq);
  }
  return {bad == 0, fmt::format("{} grid points, {} violations, min slack {:.3g}; tail fit k1 {:.3f}, lambda {:.3f}",
                                r.rows.size(), bad, tightest, r.tail.k1, r.tail.lambda)};
}

Outcome campbell() {
  ExperimentConfig c;
  c.experiment = ExperimentKind::kCampbell;
  c.lambda = 2.0;
  c.n = 10000;
  c.master_seed = 9;
  c.campbell_f = "one";
  const auto one = run_campbell(c);
  c.campbell_f = "s_over_T";
  const auto s = run_campbell(c);
  const double z1 = std::abs(one.estimate - 2.0) / one.stderr_estimate;
  const double z2 = std::abs(s.estimate - 1.0) / s.stderr_estimate;
  return {z1 <= 3 && z2 <= 3,
          fmt::format("C(1) = {:.4f} (|z| {:.2f}), C(s) = {:.4f} (|z| {:.2f})", one.estimate, z1, s.estimate, z2)};
}

Outcome bound_calculators() {
  const double e4 = std::exp(4.0);
  RateParams up;
  up.dim_m = 1.9;
  up.kappa = 0.1;
  RateParams low;
  low.sigma = 1.1;
  RateParams conc;
  RateParams conc2;
  conc2.p = 1.5;
  conc2.lambda_tail = 1.2;
  conc2.k1 = 2.2;
  RateParams mss;
  mss.kappa = 0.0;
  RateParams mss3 = mss;
  mss3.dim_m = 3.0;
  RateParams win;
  RateParams wide;
  wide.kappa = 0.5;
  wide.k2 = 1.0;
  wide.alpha = 10.0;
  RateParams low2 = low;
  low2.p = 2.0;

  const std::map<std::string, std::function<double()>> impl = {
      {"covering_bound_nm_1_10", [] { return covering_bound_nm(1, 10); }},
      {"covering_bound_nm_1_1", [] { return covering_bound_nm(1, 1); }},
      {"covering_bound_nm_3_9", [] { return covering_bound_nm(3, 9); }},
      {"upper_rate_logn4", [&] { return upper_rate(e4, up); }},
      {"upper_rate_interval_logn4", [&] { return upper_rate_interval(e4, RateParams{}); }},
      {"upper_rate_poisson_logn4", [&] { return upper_rate_poisson(e4, 1.0, 1.9, 0.1, 1.0, 0.0); }},
      {"upper_rate_poisson_logn4_chi_half", [&] { return upper_rate_poisson(e4, 1.0, 1.9, 0.1, 1.0, 0.5); }},
      {"lower_rate_n100_p1", [&] { return lower_rate_poisson(100.0, low, 1.0).w_p; }},
      {"lower_rate_n100_p2", [&] { return lower_rate_poisson(100.0, low2, 1.0).w_p; }},
      {"concentration_eps1_n100", [&] { return concentration_bound(1.0, 100.0, conc); }},
      {"concentration_eps_half_n256_p1_5", [&] { return concentration_bound(0.5, 256.0, conc2); }},
      {"min_sample_size_e_minus_2", [&] { return static_cast<double>(min_sample_size(std::exp(-2.0), mss)); }},
      {"min_sample_size_0_1_dim3", [&] { return static_cast<double>(min_sample_size(0.1, mss3)); }},
      {"covering_lower_0_1_m1_half", [&] { return covering_lower(0.1, 1, wide); }},
      {"window_m1_k0_1", [&] { return lower_window(1, win); }},
      {"window_m2_k0_1", [&] { return lower_window(2, win); }},
      {"window_m1_k0_5_alpha10", [&] { return lower_window(1, wide); }},
      {"window_m3_k0_5_alpha10", [&] { return lower_window(3, wide); }},
      {"threshold_m1_k0_1", [&] { return std::exp(validity_threshold(win, 16.0).log_threshold); }},
      {"threshold_m2_k0_1", [&] { return std::exp(validity_threshold(win, 100.0).log_threshold); }},
      {"threshold_m3_k0_5_alpha10", [&] { return std::exp(validity_threshold(wide, 1000.0).log_threshold); }},
      {"borel_half_1", [] { return borel_pmf(0.5, 1); }},
      {"borel_half_2", [] { return borel_pmf(0.5, 2); }},
      {"hawkes_mean_count_nu1_a_half_b2_T10",
       [] {
         // nu [T/(1-a) - a/((1-a)^2 b) (1 - e^{-b(1-a)T})]
         const double nu = 1, a = 0.5, b = 2, T = 10;
         return nu * (T / (1 - a) - a / ((1 - a) * (1 - a) * b) * (1 - std::exp(-b * (1 - a) * T)));
       }},
  };
  std::size_t matched = 0, total = 0;
  double worst = 0.0;
  std::string missing;
  for (const auto& [key, value] : ppw::testing::oracle_values().items()) {
    ++total;
    auto it = impl.find(key);
    if (it == impl.end()) {
      missing += " " + key;
      continue;
    }
    const double want = value.get<double>(), got = it->second();
    const double err = std::abs(got - want) / std::max(1.0, std::abs(want));
    worst = std::max(worst, err);
    matched += err <= 1e-9;
  }
  std::string detail = fmt::format("{}/{} oracle values within 1e-9 (worst {:.2g})", matched, total, worst);
  if (!missing.empty()) detail += "; unmapped:" + missing;
  return {matched == total && total == impl.size(), detail};
}

Outcome determinism() {
  std::set<std::string> conv, conc;
  for (unsigned t : {1u, 2u, 8u}) {
    ExperimentConfig c;
    c.experiment = ExperimentKind::kConvergence;
    c.lambda = 1.0;
    c.n_grid = {16, 32, 64, 128};
    c.replications = 8;
    c.master_seed = 11;
    c.threads = t;
    c.output_dir = (g_workdir / fmt::format("det_conv_{}", t)).string();
    run_experiment(c);
    std::ifstream in(fs::path(c.output_dir) / "raw.csv", std::ios::binary);
    conv.insert(std::string(std::istreambuf_iterator<char>(in), {}));

    c.experiment = ExperimentKind::kConcentration;
    c.n = 64;
    c.replications = 40;
    c.output_dir = (g_workdir / fmt::format("det_conc_{}", t)).string();
    run_experiment(c);
    std::ifstream in2(fs::path(c.output_dir) / "raw.csv", std::ios::binary);
    conc.insert(std::string(std::istreambuf_iterator<char>(in2), {}));
  }
  return {conv.size() == 1 && conc.size() == 1,
          fmt::format("distinct raw CSVs across 1/2/8 threads: convergence {}, concentration {}", conv.size(),
                      conc.size())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string workdir = (fs::temp_directory_path() / "ppw_acceptance").string();
  std::vector<int> only;
  app.add_option("--workdir", workdir, "scratch directory for experiment outputs");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);
  g_workdir = workdir;
  fs::create_directories(g_workdir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden D1 value", golden_value},
      {"D1 oracle equivalence", oracle_equivalence},
      {"metric axioms", metric_axioms},
      {"transport solvers", transport_solvers},
      {"samplers", samplers},
      {"convergence experiment", convergence},
      {"almost-sure lower bound", almost_sure_lower_bound},
      {"concentration dominance", concentration},
      {"Campbell approximation", campbell},
      {"bound calculators", bound_calculators},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::cout << fmt::format("[{}] criterion {:>2} {}: {} ({:.1f} s)", o.pass ? "PASS" : "FAIL", id,
                             criteria[i].first, o.detail, secs)
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
