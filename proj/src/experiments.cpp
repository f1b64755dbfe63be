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

#include "ppw/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "ppw/errors.hpp"
#include "ppw/parallel.hpp"
#include "ppw/pmf.hpp"

namespace ppw {
namespace {

using nlohmann::json;

constexpr std::uint64_t kExperimentStride = std::uint64_t{1} << 40;
constexpr std::uint64_t kPilotOffset = std::uint64_t{1} << 39;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

template <class T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw PreconditionError("config key '" + key + "' has the wrong type: " + v.dump());
  }
}

std::string fmt_size(std::size_t v) { return std::to_string(v); }

double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_stderr(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double k = static_cast<double>(v.size());
  return std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
}

double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double log_or_nan(double v) { return v > 0.0 ? std::log(v) : kNan; }

ResultRow timed_wp(const ExperimentConfig& config, const SamplerSpec& spec, std::size_t n,
                   std::size_t grid_index, std::size_t replication) {
  ResultRow row;
  row.n = n;
  row.replication = replication;
  row.stream_a = replication_stream(config, grid_index, replication);
  row.stream_b = row.stream_a + 1;
  const auto start = std::chrono::steady_clock::now();
  row.w_p = wp_two_sample(spec, n, config.estimator, config.p, config.master_seed, row.stream_a, 1);
  row.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

LowerRate safe_lower_rate(double n, const RateParams& params, const CountPmf& pmf) {
  if (lower_rate_max_m(n) < 1) return {};
  try {
    return lower_rate(n, params, pmf);
  } catch (const EmptySupportError&) {
    return {};
  }
}

Estimator parse_estimator(const std::string& name) {
  if (name == "independent_pair") return {EstimatorKind::kIndependentPair, 0};
  if (name == "proxy_reference") return {EstimatorKind::kProxyReference, 0};
  throw PreconditionError("unknown estimator '" + name + "'");
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kConvergence:
      return "convergence";
    case ExperimentKind::kConcentration:
      return "concentration";
    case ExperimentKind::kCampbell:
      return "campbell";
    case ExperimentKind::kBoundsTable:
      return "bounds-table";
  }
  return "?";
}

ExperimentKind parse_experiment(const std::string& name) {
  for (auto k : {ExperimentKind::kConvergence, ExperimentKind::kConcentration,
                 ExperimentKind::kCampbell, ExperimentKind::kBoundsTable})
    if (experiment_name(k) == name) return k;
  throw PreconditionError("unknown experiment '" + name + "'");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  ExperimentConfig c;
  const std::map<std::string, std::function<void(const json&)>> setters = {
      {"schema_version", [&](const json& v) { c.schema_version = get_as<int>(v, "schema_version"); }},
      {"experiment", [&](const json& v) { c.experiment = parse_experiment(get_as<std::string>(v, "experiment")); }},
      {"space", [&](const json& v) { c.space = get_as<std::string>(v, "space"); }},
      {"T", [&](const json& v) { c.T = get_as<double>(v, "T"); }},
      {"d", [&](const json& v) { c.d = get_as<int>(v, "d"); }},
      {"alpha", [&](const json& v) { c.alpha = get_as<double>(v, "alpha"); }},
      {"anchor",
       [&](const json& v) {
         c.anchor = v.is_number() ? std::vector<double>{v.get<double>()}
                                  : get_as<std::vector<double>>(v, "anchor");
       }},
      {"cost_csv", [&](const json& v) { c.cost_csv = get_as<std::string>(v, "cost_csv"); }},
      {"sampler", [&](const json& v) { c.sampler = get_as<std::string>(v, "sampler"); }},
      {"lambda", [&](const json& v) { c.lambda = get_as<double>(v, "lambda"); }},
      {"lambda_max", [&](const json& v) { c.lambda_max = get_as<double>(v, "lambda_max"); }},
      {"intensity", [&](const json& v) { c.intensity = get_as<std::string>(v, "intensity"); }},
      {"nu", [&](const json& v) { c.nu = get_as<double>(v, "nu"); }},
      {"branching", [&](const json& v) { c.branching = get_as<double>(v, "branching"); }},
      {"decay", [&](const json& v) { c.decay = get_as<double>(v, "decay"); }},
      {"measures", [&](const json& v) { c.measures = get_as<std::string>(v, "measures"); }},
      {"p", [&](const json& v) { c.p = get_as<double>(v, "p"); }},
      {"n_grid", [&](const json& v) { c.n_grid = get_as<std::vector<std::size_t>>(v, "n_grid"); }},
      {"replications", [&](const json& v) { c.replications = get_as<std::size_t>(v, "replications"); }},
      {"estimator",
       [&](const json& v) {
         const auto size = c.estimator.reference_size;
         c.estimator = parse_estimator(get_as<std::string>(v, "estimator"));
         c.estimator.reference_size = size;
       }},
      {"reference_size",
       [&](const json& v) { c.estimator.reference_size = get_as<std::size_t>(v, "reference_size"); }},
      {"master_seed", [&](const json& v) { c.master_seed = get_as<std::uint64_t>(v, "master_seed"); }},
      {"experiment_index",
       [&](const json& v) { c.experiment_index = get_as<std::uint64_t>(v, "experiment_index"); }},
      {"threads", [&](const json& v) { c.threads = get_as<unsigned>(v, "threads"); }},
      {"n", [&](const json& v) { c.n = get_as<std::size_t>(v, "n"); }},
      {"epsilon_grid", [&](const json& v) { c.epsilon_grid = get_as<std::vector<double>>(v, "epsilon_grid"); }},
      {"campbell_f", [&](const json& v) { c.campbell_f = get_as<std::string>(v, "campbell_f"); }},
      {"campbell_c", [&](const json& v) { c.campbell_c = get_as<double>(v, "campbell_c"); }},
      {"output_dir", [&](const json& v) { c.output_dir = get_as<std::string>(v, "output_dir"); }},
      {"kappa", [&](const json& v) { c.kappa = get_as<double>(v, "kappa"); }},
      {"dim_m", [&](const json& v) { c.dim_m = get_as<double>(v, "dim_m"); }},
      {"lambda_tail", [&](const json& v) { c.lambda_tail = get_as<double>(v, "lambda_tail"); }},
      {"k1", [&](const json& v) { c.k1 = get_as<double>(v, "k1"); }},
      {"sigma", [&](const json& v) { c.sigma = get_as<double>(v, "sigma"); }},
      {"k2", [&](const json& v) { c.k2 = get_as<double>(v, "k2"); }},
      {"k3", [&](const json& v) { c.k3 = get_as<double>(v, "k3"); }},
      {"chi", [&](const json& v) { c.chi = get_as<double>(v, "chi"); }},
  };
  for (const auto& [key, value] : j.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) throw PreconditionError("unknown config key '" + key + "'");
    it->second(value);
  }
  if (c.schema_version != kConfigSchemaVersion)
    throw PreconditionError(fmt::format("unsupported schema_version {}", c.schema_version));
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json j = {
      {"schema_version", schema_version},
      {"experiment", experiment_name(experiment)},
      {"space", space},
      {"T", T},
      {"d", d},
      {"alpha", alpha},
      {"sampler", sampler},
      {"lambda", lambda},
      {"lambda_max", lambda_max},
      {"intensity", intensity},
      {"nu", nu},
      {"branching", branching},
      {"decay", decay},
      {"p", p},
      {"n_grid", n_grid},
      {"replications", replications},
      {"estimator", estimator.name()},
      {"reference_size", estimator.reference_size},
      {"master_seed", master_seed},
      {"experiment_index", experiment_index},
      {"threads", threads},
      {"n", n},
      {"epsilon_grid", epsilon_grid},
      {"campbell_f", campbell_f},
      {"campbell_c", campbell_c},
      {"output_dir", output_dir},
  };
  if (anchor) j["anchor"] = *anchor;
  if (!cost_csv.empty()) j["cost_csv"] = cost_csv;
  if (!measures.empty()) j["measures"] = measures;
  const std::pair<const char*, const std::optional<double>*> opts[] = {
      {"kappa", &kappa}, {"dim_m", &dim_m}, {"lambda_tail", &lambda_tail}, {"k1", &k1},
      {"sigma", &sigma}, {"k2", &k2},       {"k3", &k3},                   {"chi", &chi}};
  for (const auto& [key, value] : opts)
    if (*value) j[key] = **value;
  return j;
}

void ExperimentConfig::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw PreconditionError("p must be a finite value >= 1");
  if (replications < 1) throw PreconditionError("replications must be >= 1");
  if (experiment == ExperimentKind::kConvergence || experiment == ExperimentKind::kBoundsTable) {
    if (n_grid.empty()) throw PreconditionError("n_grid must not be empty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
      if (n_grid[i] < 1) throw PreconditionError("n_grid entries must be >= 1");
      if (i > 0 && n_grid[i] <= n_grid[i - 1])
        throw PreconditionError("n_grid must be strictly increasing");
    }
  }
  if ((experiment == ExperimentKind::kConcentration || experiment == ExperimentKind::kCampbell) && n < 1)
    throw PreconditionError("n must be >= 1");
  if (experiment == ExperimentKind::kConcentration && p >= 2.0)
    throw OutOfRegimeError("the concentration bound needs 1 <= p < 2");
  for (double e : epsilon_grid)
    if (!(e > 0.0)) throw PreconditionError("epsilon_grid entries must be positive");
  if (estimator.kind == EstimatorKind::kProxyReference) {
    if (estimator.reference_size > kMaxReferenceSize)
      throw PreconditionError("reference_size exceeds 16384");
    const std::size_t largest = n_grid.empty() ? n : n_grid.back();
    if (estimator.reference_size < largest)
      throw PreconditionError("reference_size must be at least the largest sample size");
  }
  if (campbell_c <= 0.0) throw PreconditionError("campbell_c must be positive");
  build_sampler().validate();
}

GroundSpace ExperimentConfig::build_space() const {
  if (space == "interval") {
    if (anchor) {
      if (anchor->size() != 1) throw PreconditionError("interval anchor must be a single number");
      return GroundSpace::interval(T, alpha, (*anchor)[0]);
    }
    return GroundSpace::interval(T, alpha);
  }
  if (space == "box") {
    if (anchor) return GroundSpace::box(d, T, alpha, *anchor);
    return GroundSpace::box(d, T, alpha);
  }
  if (space == "finite") {
    if (cost_csv.empty()) throw PreconditionError("finite space needs cost_csv");
    std::size_t a = 0;
    if (anchor) {
      if (anchor->size() != 1 || (*anchor)[0] < 0 || (*anchor)[0] != std::floor((*anchor)[0]))
        throw PreconditionError("finite anchor must be one point index");
      a = static_cast<std::size_t>((*anchor)[0]);
    }
    return GroundSpace::finite_metric(read_matrix_csv(cost_csv), alpha, a);
  }
  throw PreconditionError("unknown space '" + space + "'");
}

SamplerSpec ExperimentConfig::build_sampler() const {
  GroundSpace s = build_space();
  if (sampler == "poisson") return {HomogeneousPoisson{lambda}, std::move(s)};
  if (sampler == "inhomogeneous_poisson") {
    InhomogeneousPoisson ip;
    ip.intensity_max = lambda_max;
    ip.name = intensity;
    const double top = lambda_max, side = T;
    if (intensity == "linear") {
      // Rises from 0 to lambda_max along the first coordinate.
      ip.intensity = [top, side](PointView x) { return top * x[0] / side; };
    } else if (intensity == "constant") {
      ip.intensity = [top](PointView) { return top; };
    } else {
      throw PreconditionError("unknown intensity '" + intensity + "'");
    }
    return {std::move(ip), std::move(s)};
  }
  if (sampler == "hawkes") return {HawkesExp{nu, branching, decay}, std::move(s)};
  if (sampler == "deterministic") {
    if (measures.empty()) throw PreconditionError("deterministic sampler needs a measures file");
    MeasureFile file = read_measures_jsonl(measures, s.point_dim());
    return {Deterministic{std::move(file.measures)}, std::move(s)};
  }
  throw PreconditionError("unknown sampler '" + sampler + "'");
}

RateParams ExperimentConfig::rate_params() const {
  const GroundSpace s = build_space();
  RateParams r;
  r.p = p;
  r.alpha = alpha;
  r.diam = s.diameter();
  r.dim_m = s.minkowski_dim();
  switch (s.kind()) {
    case GroundSpace::Kind::kInterval:
      r.sigma = 1.0;
      r.k2 = 2.0 / T;
      break;
    case GroundSpace::Kind::kBox:
      r.sigma = d;
      r.k2 = unit_ball_volume(d) / std::pow(T, d);
      break;
    case GroundSpace::Kind::kFiniteMetric:
      break;
  }
  if (kappa) r.kappa = *kappa;
  if (dim_m) r.dim_m = *dim_m;
  if (lambda_tail) r.lambda_tail = *lambda_tail;
  if (k1) r.k1 = *k1;
  if (sigma) r.sigma = *sigma;
  if (k2) r.k2 = *k2;
  if (k3) r.k3 = *k3;
  return r;
}

std::uint64_t replication_stream(const ExperimentConfig& config, std::size_t grid_index,
                                 std::size_t replication) {
  const std::uint64_t task = grid_index * config.replications + replication;
  return config.experiment_index * kExperimentStride + 2 * task;
}

std::uint64_t pilot_stream(const ExperimentConfig& config) {
  return config.experiment_index * kExperimentStride + kPilotOffset;
}

CountPmf count_pmf(const ExperimentConfig& config, std::size_t pilot_draws) {
  const SamplerSpec spec = config.build_sampler();
  if (std::holds_alternative<HomogeneousPoisson>(spec.variant)) {
    const double mean = config.lambda;
    return [mean](std::int64_t m) { return poisson_pmf(mean, m); };
  }
  std::map<std::int64_t, double> freq;
  std::vector<std::size_t> counts;
  if (const auto* det = std::get_if<Deterministic>(&spec.variant)) {
    for (const auto& mu : det->measures) counts.push_back(mu.size());
  } else {
    RngStream stream(config.master_seed, pilot_stream(config));
    for (std::size_t i = 0; i < pilot_draws; ++i) counts.push_back(sample(spec, stream).size());
  }
  for (std::size_t c : counts) freq[static_cast<std::int64_t>(c)] += 1.0 / counts.size();
  return [freq = std::move(freq)](std::int64_t m) {
    auto it = freq.find(m);
    return it == freq.end() ? 0.0 : it->second;
  };
}

// --- convergence ----------------------------------------------------------

ConvergenceResult run_convergence(const ExperimentConfig& config) {
  config.validate();
  const SamplerSpec spec = config.build_sampler();
  const RateParams params = config.rate_params();
  const CountPmf pmf = count_pmf(config);

  std::vector<LowerRate> lower(config.n_grid.size());
  for (std::size_t g = 0; g < config.n_grid.size(); ++g)
    lower[g] = safe_lower_rate(static_cast<double>(config.n_grid[g]), params, pmf);

  const std::size_t reps = config.replications;
  ConvergenceResult result;
  result.raw = run_replication_tasks(config.n_grid.size() * reps, config.threads, [&](std::size_t t) {
    const std::size_t g = t / reps, r = t % reps;
    ResultRow row = timed_wp(config, spec, config.n_grid[g], g, r);
    row.lower_rate = lower[g].w_p;
    row.lower_rate_valid = lower[g].valid;
    return row;
  });
  result.aggregate = aggregate_rows(config, result.raw);
  return result;
}

std::vector<AggregateRow> aggregate_rows(const ExperimentConfig& config,
                                         const std::vector<ResultRow>& raw) {
  const RateParams params = config.rate_params();
  const bool poisson = config.sampler == "poisson";
  const bool interval = config.space == "interval";
  const double chi = config.chi.value_or(0.0);

  std::vector<AggregateRow> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i;
    std::vector<double> w;
    while (j < raw.size() && raw[j].n == raw[i].n) w.push_back(raw[j++].w_p);
    AggregateRow a;
    a.n = raw[i].n;
    a.replications = w.size();
    a.mean_w = sample_mean(w);
    a.stderr_w = sample_stderr(w, a.mean_w);
    a.min_w = *std::min_element(w.begin(), w.end());
    const double n = static_cast<double>(a.n);
    a.upper_rate = n >= 3 ? upper_rate(n, params) : kNan;
    a.upper_rate_interval = interval && n >= 3 ? upper_rate_interval(n, params) : kNan;
    a.upper_rate_poisson = poisson && n >= 16
                               ? upper_rate_poisson(n, config.lambda, params.dim_m, params.kappa,
                                                    params.p, chi)
                               : kNan;
    a.lower_rate = raw[i].lower_rate;
    a.lower_rate_valid = raw[i].lower_rate_valid;
    out.push_back(a);
    i = j;
  }
  return out;
}

void write_raw_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  CsvWriter csv(out, {"n", "replication", "w_p", "stream_a", "stream_b", "lower_rate",
                      "lower_rate_valid"});
  for (const auto& r : rows)
    csv.row({fmt_size(r.n), fmt_size(r.replication), format_double(r.w_p),
             std::to_string(r.stream_a), std::to_string(r.stream_b), format_double(r.lower_rate),
             r.lower_rate_valid ? "1" : "0"});
}

void write_timings_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  CsvWriter csv(out, {"n", "replication", "runtime_ms"});
  for (const auto& r : rows)
    csv.row({fmt_size(r.n), fmt_size(r.replication), format_double(r.runtime_ms)});
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  CsvWriter csv(out, {"n", "mean_w", "stderr", "upper_rate", "upper_rate_poisson", "lower_rate",
                      "replications", "min_w", "upper_rate_interval", "lower_rate_valid"});
  for (const auto& a : rows)
    csv.row({fmt_size(a.n), format_double(a.mean_w), format_double(a.stderr_w),
             format_double(a.upper_rate), format_double(a.upper_rate_poisson),
             format_double(a.lower_rate), fmt_size(a.replications), format_double(a.min_w),
             format_double(a.upper_rate_interval), a.lower_rate_valid ? "1" : "0"});
}

std::vector<AggregateRow> read_aggregate_csv(const CsvTable& table) {
  const std::size_t cn = table.column("n"), cm = table.column("mean_w");
  auto optional_column = [&](const char* name) -> std::optional<std::size_t> {
    try {
      return table.column(name);
    } catch (const IoError&) {
      return std::nullopt;
    }
  };
  const auto cs = optional_column("stderr"), cu = optional_column("upper_rate"),
             cl = optional_column("lower_rate");
  auto num = [](const std::string& s) {
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      if (s == "nan") return kNan;
      throw IoError("non-numeric CSV entry '" + s + "'");
    }
  };
  std::vector<AggregateRow> out;
  for (const auto& row : table.rows) {
    AggregateRow a;
    a.n = static_cast<std::size_t>(num(row[cn]));
    a.mean_w = num(row[cm]);
    if (cs) a.stderr_w = num(row[*cs]);
    if (cu) a.upper_rate = num(row[*cu]);
    if (cl) a.lower_rate = num(row[*cl]);
    out.push_back(a);
  }
  return out;
}

Abscissa parse_abscissa(const std::string& name) {
  if (name == "sqrt_log_n") return Abscissa::kSqrtLogN;
  if (name == "sqrt_logn_loglogn") return Abscissa::kSqrtLogNLogLogN;
  throw PreconditionError("unknown abscissa '" + name + "'");
}

std::string abscissa_name(Abscissa a) {
  return a == Abscissa::kSqrtLogN ? "sqrt_log_n" : "sqrt_logn_loglogn";
}

double abscissa_value(Abscissa a, double n) {
  const double ln = std::log(n);
  if (a == Abscissa::kSqrtLogN) return ln >= 0.0 ? std::sqrt(ln) : kNan;
  const double prod = ln * std::log(ln);
  return ln > 1.0 ? std::sqrt(prod) : kNan;
}

RateFit fit_rate(const std::vector<AggregateRow>& rows, Abscissa abscissa) {
  RateFit fit;
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    const double x = abscissa_value(abscissa, static_cast<double>(r.n));
    if (!(r.mean_w > 0.0)) {
      fit.warnings.push_back(fmt::format("dropped n = {}: mean_w = {} is not positive", r.n, r.mean_w));
      continue;
    }
    if (!std::isfinite(x)) {
      fit.warnings.push_back(fmt::format("dropped n = {}: {} is undefined", r.n, abscissa_name(abscissa)));
      continue;
    }
    xs.push_back(x);
    ys.push_back(std::log(r.mean_w));
  }
  if (xs.size() < 4)
    throw FitError(fmt::format("rate fit needs at least 4 usable rows, have {}", xs.size()));
  const double mx = sample_mean(xs), my = sample_mean(ys);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0.0) throw FitError("rate fit needs at least two distinct sample sizes");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - fit.intercept - fit.slope * xs[i];
    ss_res += e * e;
  }
  // A constant series is fitted exactly by the flat line.
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.rows_used = xs.size();
  return fit;
}

void emit_plot_data(const std::vector<AggregateRow>& rows, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "# convergence plot data, natural logarithms; rates use C = 1\n"
      << "# nan marks values outside a formula's range\n"
      << "# columns: n sqrt_log_n log_mean_w log_upper_rate log_lower_rate\n";
  for (const auto& a : rows) {
    const double n = static_cast<double>(a.n);
    out << a.n << ' ' << format_double(abscissa_value(Abscissa::kSqrtLogN, n)) << ' '
        << format_double(log_or_nan(a.mean_w)) << ' ' << format_double(log_or_nan(a.upper_rate))
        << ' ' << format_double(log_or_nan(a.lower_rate)) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::vector<double>> read_plot_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string f;
    while (fields >> f) row.push_back(std::strtod(f.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- concentration --------------------------------------------------------

ConcentrationResult run_concentration(const ExperimentConfig& config) {
  config.validate();
  const SamplerSpec spec = config.build_sampler();
  RateParams params = config.rate_params();

  ConcentrationResult result;
  if (config.lambda_tail && config.k1) {
    result.tail = {*config.k1, *config.lambda_tail};
  } else {
    RngStream stream(config.master_seed, pilot_stream(config));
    std::vector<std::size_t> counts(10'000);
    for (auto& c : counts) c = sample(spec, stream).size();
    result.tail = fit_tail_counts(counts);
  }
  params.k1 = result.tail.k1;
  params.lambda_tail = result.tail.lambda;

  result.raw = run_replication_tasks(config.replications, config.threads, [&](std::size_t r) {
    return timed_wp(config, spec, config.n, 0, r);
  });
  std::vector<double> w;
  for (const auto& r : result.raw) w.push_back(r.w_p);
  result.mean_w = sample_mean(w);
  double max_dev = 0.0;
  for (double x : w) max_dev = std::max(max_dev, std::abs(x - result.mean_w));

  std::vector<double> grid = config.epsilon_grid;
  if (grid.empty()) {
    const double top = max_dev > 0.0 ? 1.25 * max_dev : 1.0;
    for (int k = 1; k <= 25; ++k) grid.push_back(top * k / 25.0);
  }
  const double n = static_cast<double>(config.n);
  for (double eps : grid) {
    const auto exceed = std::count_if(w.begin(), w.end(), [&](double x) {
      return std::abs(x - result.mean_w) > eps;
    });
    result.rows.push_back({eps, static_cast<double>(exceed) / static_cast<double>(w.size()),
                           concentration_bound_two_sided(eps, n, params)});
  }
  return result;
}

void write_concentration_csv(std::ostream& out, const ConcentrationResult& result) {
  CsvWriter csv(out, {"epsilon", "empirical_freq", "bound"});
  for (const auto& r : result.rows)
    csv.row({format_double(r.epsilon), format_double(r.empirical_freq), format_double(r.bound)});
}

// --- Campbell measure -----------------------------------------------------

CampbellResult run_campbell(const ExperimentConfig& config) {
  config.validate();
  const SamplerSpec spec = config.build_sampler();
  const std::string& name = config.campbell_f;
  const double T = config.T, c = config.campbell_c;
  if (name != "zero" && name != "one" && spec.space.kind() == GroundSpace::Kind::kFiniteMetric)
    throw UnsupportedSpaceError("location-dependent Campbell functions need an interval or box");

  std::function<double(PointView, std::size_t)> f;
  if (name == "zero") {
    f = [](PointView, std::size_t) { return 0.0; };
  } else if (name == "one") {
    f = [](PointView, std::size_t) { return 1.0; };
  } else if (name == "s_over_T") {
    f = [T](PointView x, std::size_t) { return x[0] / T; };
  } else if (name == "damped") {
    f = [T, c](PointView x, std::size_t size) {
      return x[0] / T * std::exp(-static_cast<double>(size) / c);
    };
  } else {
    throw PreconditionError("unknown campbell_f '" + name + "'");
  }

  RngStream stream(config.master_seed, replication_stream(config, 0, 0));
  std::vector<double> per_sample(config.n);
  for (auto& v : per_sample) {
    const CountingMeasure eta = sample(spec, stream);
    double s = 0.0;
    for (std::size_t i = 0; i < eta.size(); ++i) s += f(eta.point(i), eta.size());
    v = s;
  }

  CampbellResult result;
  result.f = name;
  result.n = config.n;
  result.estimate = sample_mean(per_sample);
  result.stderr_estimate = sample_stderr(per_sample, result.estimate);
  if (std::holds_alternative<HomogeneousPoisson>(spec.variant) &&
      spec.space.kind() != GroundSpace::Kind::kFiniteMetric) {
    const double lam = config.lambda;
    if (name == "zero") result.reference = 0.0;
    if (name == "one") result.reference = lam;
    if (name == "s_over_T") result.reference = lam / 2.0;
    if (name == "damped") {
      // Mecke: E sum f(x, eta) = lam E_U[h] E[e^{-(|eta| + 1) / c}].
      const double q = std::exp(-1.0 / c);
      result.reference = lam / 2.0 * q * std::exp(lam * (q - 1.0));
    }
  }
  return result;
}

void write_campbell_csv(std::ostream& out, const CampbellResult& r) {
  CsvWriter csv(out, {"f", "n", "estimate", "stderr", "reference"});
  csv.row({r.f, fmt_size(r.n), format_double(r.estimate), format_double(r.stderr_estimate),
           r.reference ? format_double(*r.reference) : "nan"});
}

// --- bounds table ---------------------------------------------------------

void write_bounds_table(std::ostream& out, const ExperimentConfig& config) {
  config.validate();
  const RateParams params = config.rate_params();
  const CountPmf pmf = count_pmf(config);
  const double chi = config.chi.value_or(0.0);
  CsvWriter csv(out, {"n", "upper_rate", "upper_rate_interval", "upper_rate_poisson", "lower_rate",
                      "lower_rate_argmax_m", "lower_rate_valid", "log_validity_threshold"});
  for (std::size_t n_int : config.n_grid) {
    const double n = static_cast<double>(n_int);
    const LowerRate lr = safe_lower_rate(n, params, pmf);
    const ValidityCheck vc = validity_threshold(params, n);
    csv.row({fmt_size(n_int), format_double(n >= 3 ? upper_rate(n, params) : kNan),
             format_double(n >= 3 ? upper_rate_interval(n, params) : kNan),
             format_double(n >= 16 ? upper_rate_poisson(n, config.lambda, params.dim_m,
                                                        params.kappa, params.p, chi)
                                   : kNan),
             format_double(lr.w_p), std::to_string(lr.argmax_m), lr.valid ? "1" : "0",
             format_double(vc.no_admissible_m ? kNan : vc.log_threshold)});
  }
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config) {
  config.validate();
  namespace fs = std::filesystem;
  const fs::path dir = config.output_dir;
  std::vector<fs::path> written;
  auto write = [&](const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir / name;
    auto out = open_for_write(path);
    body(out);
    if (!out) throw IoError("write failed: " + path.string());
    written.push_back(path);
  };

  if (config.estimator.kind == EstimatorKind::kProxyReference) {
    const std::size_t largest = config.n_grid.empty() ? config.n : config.n_grid.back();
    if (static_cast<double>(largest) * static_cast<double>(config.estimator.reference_size) > 1e8)
      std::cerr << "warning: proxy_reference cost matrix exceeds 1e8 entries\n";
  }

  json meta = {{"config", config.to_json()},
               {"sampler", config.build_sampler().name()},
               {"estimator", config.estimator.name()},
               {"estimator_bias", config.estimator.bias_note()},
               {"rates", kRateShapeNote},
               {"streams", "replication r of grid point g uses streams "
                           "experiment_index * 2^40 + 2 (g R + r) and the next one"}};
  write("metadata.json", [&](std::ostream& out) { out << meta.dump(2) << '\n'; });

  switch (config.experiment) {
    case ExperimentKind::kConvergence: {
      ConvergenceResult result;
      try {
        result = run_convergence(config);
      } catch (const PartialRunError& e) {
        write("raw.partial.csv", [&](std::ostream& out) { write_raw_csv(out, e.completed()); });
        throw;
      }
      write("raw.csv", [&](std::ostream& out) { write_raw_csv(out, result.raw); });
      write("timings.csv", [&](std::ostream& out) { write_timings_csv(out, result.raw); });
      write("aggregate.csv", [&](std::ostream& out) { write_aggregate_csv(out, result.aggregate); });
      emit_plot_data(result.aggregate, dir / "plot.dat");
      written.push_back(dir / "plot.dat");
      break;
    }
    case ExperimentKind::kConcentration: {
      ConcentrationResult result;
      try {
        result = run_concentration(config);
      } catch (const PartialRunError& e) {
        write("raw.partial.csv", [&](std::ostream& out) { write_raw_csv(out, e.completed()); });
        throw;
      }
      write("raw.csv", [&](std::ostream& out) { write_raw_csv(out, result.raw); });
      write("concentration.csv",
            [&](std::ostream& out) { write_concentration_csv(out, result); });
      json tail = {{"k1", result.tail.k1}, {"lambda", result.tail.lambda}, {"mean_w", result.mean_w}};
      write("tail_fit.json", [&](std::ostream& out) { out << tail.dump(2) << '\n'; });
      break;
    }
    case ExperimentKind::kCampbell: {
      const CampbellResult result = run_campbell(config);
      write("campbell.csv", [&](std::ostream& out) { write_campbell_csv(out, result); });
      break;
    }
    case ExperimentKind::kBoundsTable:
      write("bounds.csv", [&](std::ostream& out) { write_bounds_table(out, config); });
      break;
  }
  return written;
}

}  // namespace ppw
