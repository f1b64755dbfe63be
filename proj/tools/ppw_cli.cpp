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

// Command-line front end: distances, sampling, bound evaluation and
// experiment runs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ppw/bounds.hpp"
#include "ppw/counting_measure.hpp"
#include "ppw/errors.hpp"
#include "ppw/experiments.hpp"
#include "ppw/io.hpp"
#include "ppw/pp_wasserstein.hpp"
#include "ppw/samplers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SpaceFlags {
  std::string space = "interval";
  double T = 1.0;
  int d = 1;
  double alpha = 1.0;
  std::string cost_csv;

  void attach(CLI::App* app) {
    app->add_option("--space", space, "interval | box | finite")->capture_default_str();
    app->add_option("--T", T, "interval length or box side")->capture_default_str();
    app->add_option("--d", d, "box dimension")->capture_default_str();
    app->add_option("--alpha", alpha, "distance to the augmentation point")->capture_default_str();
    app->add_option("--cost-csv", cost_csv, "distance table of a finite space");
  }

  ppw::ExperimentConfig config() const {
    ppw::ExperimentConfig c;
    c.space = space;
    c.T = T;
    c.d = d;
    c.alpha = alpha;
    c.cost_csv = cost_csv;
    return c;
  }
};

// A measure given inline as a JSON array or as the first line of a JSONL file.
ppw::CountingMeasure measure_arg(const std::string& arg, int dim) {
  if (fs::exists(arg)) {
    auto file = ppw::read_measures_jsonl(fs::path(arg), dim);
    if (file.measures.empty()) throw ppw::IoError(arg + " holds no measures");
    return file.measures.front();
  }
  return ppw::measure_from_json(json::parse(arg), dim);
}

ppw::ExperimentConfig config_or_default(const std::string& path) {
  return path.empty() ? ppw::ExperimentConfig{} : ppw::ExperimentConfig::load(path);
}

void print_number(double v) { std::cout << ppw::format_double(v) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein distances between point-process laws"};
  app.require_subcommand(1);
  // Global flags may follow the subcommand.
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_dir;
  app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--threads", threads, "worker threads, 0 = all cores");
  app.add_option("--out", out_dir, "output directory");

  // d1
  auto* d1_cmd = app.add_subcommand("d1", "D1 distance between two counting measures");
  SpaceFlags d1_space;
  d1_space.attach(d1_cmd);
  std::string d1_a, d1_b, d1_method = "auto";
  d1_cmd->add_option("mu1", d1_a, "JSON array or JSONL file")->required();
  d1_cmd->add_option("mu2", d1_b, "JSON array or JSONL file")->required();
  d1_cmd->add_option("--method", d1_method, "auto | assignment | sorted | cdf")->capture_default_str();

  // wp
  auto* wp_cmd = app.add_subcommand("wp", "W_p between two empirical laws stored as JSONL");
  SpaceFlags wp_space;
  wp_space.attach(wp_cmd);
  std::string wp_a, wp_b;
  double wp_p = 1.0;
  wp_cmd->add_option("law1", wp_a)->required()->check(CLI::ExistingFile);
  wp_cmd->add_option("law2", wp_b)->required()->check(CLI::ExistingFile);
  wp_cmd->add_option("--p", wp_p, "order")->capture_default_str();

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw realizations as JSONL");
  std::string sample_config;
  std::size_t sample_count = 1;
  std::uint64_t sample_stream = 0;
  std::string sample_method = "cluster";
  sample_cmd->add_option("config", sample_config, "experiment config supplying space and sampler")
      ->check(CLI::ExistingFile);
  sample_cmd->add_option("--count", sample_count)->capture_default_str();
  sample_cmd->add_option("--stream", sample_stream)->capture_default_str();
  sample_cmd->add_option("--hawkes-method", sample_method, "cluster | thinning")->capture_default_str();

  // bounds eval
  auto* bounds_cmd = app.add_subcommand("bounds", "rate and concentration formulas");
  bounds_cmd->require_subcommand(1);
  auto* eval_cmd = bounds_cmd->add_subcommand("eval", "evaluate every bound at one sample size");
  std::string eval_config;
  double eval_n = 100.0;
  std::optional<double> eval_eps;
  eval_cmd->add_option("config", eval_config)->check(CLI::ExistingFile);
  eval_cmd->add_option("--n", eval_n)->capture_default_str();
  eval_cmd->add_option("--eps", eval_eps, "deviation for the concentration bound and sample-size rule");

  // run
  auto* run_cmd = app.add_subcommand("run", "run an experiment config");
  std::string run_config;
  run_cmd->add_option("config", run_config)->required()->check(CLI::ExistingFile);

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "fit log mean_w against a rate abscissa");
  std::string fit_csv, fit_abscissa = "sqrt_logn_loglogn";
  fit_cmd->add_option("aggregate", fit_csv)->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--abscissa", fit_abscissa, "sqrt_log_n | sqrt_logn_loglogn")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*d1_cmd) {
      const auto space = d1_space.config().build_space();
      const auto a = measure_arg(d1_a, space.point_dim());
      const auto b = measure_arg(d1_b, space.point_dim());
      ppw::check_measure(space, a);
      ppw::check_measure(space, b);
      if (d1_method == "auto" || d1_method == "assignment")
        print_number(d1_method == "auto" ? ppw::d1_fast(space, a, b) : ppw::d1(space, a, b));
      else if (d1_method == "sorted")
        print_number(ppw::d1_sorted_1d(space, a, b));
      else if (d1_method == "cdf")
        print_number(ppw::d1_cdf_area(space, a, b));
      else
        throw ppw::PreconditionError("unknown method '" + d1_method + "'");
    } else if (*wp_cmd) {
      const auto space = wp_space.config().build_space();
      const auto a = ppw::read_law_jsonl(wp_a, space.point_dim());
      const auto b = ppw::read_law_jsonl(wp_b, space.point_dim());
      const unsigned t = threads.value_or(1);
      const bool equal = a.is_uniform() && b.is_uniform() && a.size() == b.size();
      const double w = equal ? ppw::wp_equal(space, a, b, wp_p, t) : ppw::wp_general(space, a, b, wp_p, t);
      std::cout << json{{"p", wp_p}, {"w_p", w}, {"solver", equal ? "assignment" : "transport"}}.dump()
                << '\n';
    } else if (*sample_cmd) {
      auto config = config_or_default(sample_config);
      if (seed) config.master_seed = *seed;
      const auto spec = config.build_sampler();
      spec.validate();
      ppw::RngStream stream(config.master_seed, sample_stream);
      std::vector<ppw::CountingMeasure> draws;
      for (std::size_t i = 0; i < sample_count; ++i) {
        if (std::holds_alternative<ppw::HawkesExp>(spec.variant) && sample_method == "thinning")
          draws.push_back(ppw::sample_hawkes_thinning(spec, stream));
        else
          draws.push_back(ppw::sample(spec, stream));
      }
      if (out_dir.empty()) {
        ppw::write_measures_jsonl(std::cout, draws);
      } else {
        auto out = ppw::open_for_write(fs::path(out_dir) / "samples.jsonl");
        ppw::write_measures_jsonl(out, draws);
      }
    } else if (*eval_cmd) {
      const auto config = config_or_default(eval_config);
      const auto params = config.rate_params();
      json j = {{"n", eval_n}, {"note", ppw::kRateShapeNote}};
      if (eval_n >= 3) {
        j["upper_rate"] = ppw::upper_rate(eval_n, params);
        j["upper_rate_interval"] = ppw::upper_rate_interval(eval_n, params);
      }
      if (eval_n >= 16)
        j["upper_rate_poisson"] = ppw::upper_rate_poisson(eval_n, config.lambda, params.dim_m,
                                                          params.kappa, params.p, config.chi.value_or(0.0));
      if (ppw::lower_rate_max_m(eval_n) >= 1) {
        const auto lr = ppw::lower_rate(eval_n, params, ppw::count_pmf(config));
        j["lower_rate"] = lr.w_p;
        j["lower_rate_argmax_m"] = lr.argmax_m;
        j["lower_rate_valid"] = lr.valid;
      }
      if (eval_eps) {
        if (params.p < 2.0) j["concentration_two_sided"] = ppw::concentration_bound_two_sided(*eval_eps, eval_n, params);
        j["min_sample_size"] = ppw::min_sample_size(*eval_eps, params);
      }
      std::cout << j.dump(2) << '\n';
    } else if (*run_cmd) {
      auto config = ppw::ExperimentConfig::load(run_config);
      if (seed) config.master_seed = *seed;
      if (threads) config.threads = *threads;
      if (!out_dir.empty()) config.output_dir = out_dir;
      for (const auto& path : ppw::run_experiment(config)) std::cout << path.string() << '\n';
    } else if (*fit_cmd) {
      const auto rows = ppw::read_aggregate_csv(ppw::read_csv(fs::path(fit_csv)));
      const auto fit = ppw::fit_rate(rows, ppw::parse_abscissa(fit_abscissa));
      for (const auto& w : fit.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << json{{"abscissa", fit_abscissa},
                        {"slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"r_squared", fit.r_squared},
                        {"rows_used", fit.rows_used}}
                       .dump(2)
                << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
