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

#ifndef PPW_EXPERIMENTS_HPP_
#define PPW_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <exception>

#include <fmt/format.h>

#include "json.hpp"

#include "ppw/bounds.hpp"
#include "ppw/ground_space.hpp"
#include "ppw/io.hpp"
#include "ppw/parallel.hpp"
#include "ppw/pp_wasserstein.hpp"
#include "ppw/samplers.hpp"

namespace ppw {

inline constexpr int kConfigSchemaVersion = 1;

enum class ExperimentKind { kConvergence, kConcentration, kCampbell, kBoundsTable };

// Flat JSON configuration; see README.md for the key list. Unknown keys are
// rejected so that typos do not silently fall back to defaults.
struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  ExperimentKind experiment = ExperimentKind::kConvergence;

  // Ground space.
  std::string space = "interval";  // interval | box | finite
  double T = 1.0;                  // interval length or box side
  int d = 1;
  double alpha = 1.0;
  std::optional<std::vector<double>> anchor;  // finite: one-element index
  std::string cost_csv;                       // finite only

  // Sampler.
  std::string sampler = "poisson";  // poisson | inhomogeneous_poisson | hawkes | deterministic
  double lambda = 1.0;              // Poisson total mass E|eta|
  double lambda_max = 2.0;          // inhomogeneous: intensity bound per unit volume
  std::string intensity = "linear";  // inhomogeneous: linear | constant
  double nu = 1.0;                   // Hawkes baseline
  double branching = 0.5;
  double decay = 1.0;
  std::string measures;  // deterministic: JSONL file

  double p = 1.0;
  std::vector<std::size_t> n_grid;
  std::size_t replications = 1;
  Estimator estimator;
  std::uint64_t master_seed = 0;
  std::uint64_t experiment_index = 0;
  unsigned threads = 1;

  // Concentration and Campbell.
  std::size_t n = 256;
  std::vector<double> epsilon_grid;
  std::string campbell_f = "one";  // zero | one | s_over_T | damped
  double campbell_c = 1.0;

  std::string output_dir = "results";

  // Rate-parameter overrides; unset fields are derived from space and sampler.
  std::optional<double> kappa, dim_m, lambda_tail, k1, sigma, k2, k3, chi;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
  // Throws PreconditionError on an inconsistent configuration.
  void validate() const;

  GroundSpace build_space() const;
  SamplerSpec build_sampler() const;
  // Overrides on top of defaults derived from the space and sampler:
  // dim_m and sigma from the space dimension, k2 from the uniform location
  // law, diam and alpha from the space.
  RateParams rate_params() const;
};

std::string experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(const std::string& name);

// Streams used by the replication r of grid point g. Every (g, r) pair owns
// two streams, disjoint across experiments with different experiment_index.
std::uint64_t replication_stream(const ExperimentConfig& config, std::size_t grid_index,
                                 std::size_t replication);
// Stream for auxiliary draws (tail fits, empirical count pmfs).
std::uint64_t pilot_stream(const ExperimentConfig& config);

// Count pmf used for lower-rate annotations: closed form for Poisson, exact
// frequencies for a deterministic sampler, an empirical pmf of `pilot_draws`
// realizations otherwise.
CountPmf count_pmf(const ExperimentConfig& config, std::size_t pilot_draws = 10'000);

// --- convergence ----------------------------------------------------------

struct ResultRow {
  std::size_t n = 0;
  std::size_t replication = 0;
  double w_p = 0.0;
  std::uint64_t stream_a = 0;
  std::uint64_t stream_b = 0;
  double lower_rate = 0.0;
  bool lower_rate_valid = false;
  double runtime_ms = 0.0;  // kept out of the raw CSV, see write_timings_csv
};

struct AggregateRow {
  std::size_t n = 0;
  std::size_t replications = 0;
  double mean_w = 0.0;
  double stderr_w = 0.0;  // sample standard deviation / sqrt(replications)
  double min_w = 0.0;
  double upper_rate = 0.0;
  double upper_rate_interval = 0.0;
  double upper_rate_poisson = 0.0;
  double lower_rate = 0.0;
  bool lower_rate_valid = false;
};

struct ConvergenceResult {
  std::vector<ResultRow> raw;
  std::vector<AggregateRow> aggregate;
};

// Thrown when a replication fails; carries every row completed before the
// first failing (n, replication) in grid order.
class PartialRunError : public std::runtime_error {
 public:
  PartialRunError(const std::string& what, std::vector<ResultRow> completed)
      : std::runtime_error(what), completed_(std::move(completed)) {}
  const std::vector<ResultRow>& completed() const { return completed_; }

 private:
  std::vector<ResultRow> completed_;
};

// Runs task(t) for every t. A failure turns into PartialRunError carrying the
// rows of all tasks before the first failed one.
template <class Task>
std::vector<ResultRow> run_replication_tasks(std::size_t count, unsigned threads, Task&& task) {
  std::vector<ResultRow> rows(count);
  std::vector<std::exception_ptr> errors(count);
  parallel_for(count, threads, [&](std::size_t t) {
    try {
      rows[t] = task(t);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  });
  for (std::size_t t = 0; t < count; ++t) {
    if (!errors[t]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[t]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    rows.resize(t);
    throw PartialRunError(fmt::format("replication task {} failed: {}", t, what), std::move(rows));
  }
  return rows;
}

ConvergenceResult run_convergence(const ExperimentConfig& config);
std::vector<AggregateRow> aggregate_rows(const ExperimentConfig& config,
                                         const std::vector<ResultRow>& raw);

void write_raw_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_timings_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> read_aggregate_csv(const CsvTable& table);

enum class Abscissa { kSqrtLogN, kSqrtLogNLogLogN };
Abscissa parse_abscissa(const std::string& name);
std::string abscissa_name(Abscissa a);
double abscissa_value(Abscissa a, double n);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t rows_used = 0;
  std::vector<std::string> warnings;
};

// OLS of log(mean_w) on the abscissa. Rows with mean_w <= 0 are dropped with
// a warning; fewer than four remaining rows throw FitError.
RateFit fit_rate(const std::vector<AggregateRow>& rows, Abscissa abscissa);

// Whitespace-separated columns n, sqrt_log_n, log_mean_w, log_upper_rate,
// log_lower_rate after a '#' header.
void emit_plot_data(const std::vector<AggregateRow>& rows, const std::filesystem::path& path);
// Numeric rows of a plot file, header lines skipped.
std::vector<std::vector<double>> read_plot_data(const std::filesystem::path& path);

// --- concentration --------------------------------------------------------

struct ConcentrationRow {
  double epsilon = 0.0;
  double empirical_freq = 0.0;
  double bound = 0.0;  // min(1, 2 * one-sided bound)
};

struct ConcentrationResult {
  std::vector<ResultRow> raw;
  double mean_w = 0.0;
  TailFit tail;
  std::vector<ConcentrationRow> rows;
};

ConcentrationResult run_concentration(const ExperimentConfig& config);
void write_concentration_csv(std::ostream& out, const ConcentrationResult& result);

// --- Campbell measure -----------------------------------------------------

struct CampbellResult {
  std::string f;
  std::size_t n = 0;
  double estimate = 0.0;
  double stderr_estimate = 0.0;
  std::optional<double> reference;  // homogeneous Poisson only
};

CampbellResult run_campbell(const ExperimentConfig& config);
void write_campbell_csv(std::ostream& out, const CampbellResult& result);

// --- bounds table ---------------------------------------------------------

void write_bounds_table(std::ostream& out, const ExperimentConfig& config);

// Runs the configured experiment and writes its files under output_dir.
// Returns the paths written.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config);

}  // namespace ppw

#endif  // PPW_EXPERIMENTS_HPP_
