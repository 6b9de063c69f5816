// Copyright 2026 The GLyDER Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Benchmark driver: run single configurations, sweep stepsize grids, check
// the library's statistical claims, and plot recorded runs.
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 verification
// failure.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glyder/glyder.hpp"

namespace {

// Every run/sweep option doubles as a config-file key; the CLI stores raw
// strings and funnels them through the same apply_setting() used for files,
// so validation and spellings stay in one place.
struct ConfigOptions {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "config file with key = value lines (flags override it)");
    const struct {
      const char* key;
      const char* help;
    } kKeys[] = {
        {"problem", "problem kind: quadratic | logistic | mlp"},
        {"data-seed", "seed for the problem data (fixed across trials)"},
        {"dim", "parameter dimension (quadratic, logistic)"},
        {"min-eig", "smallest eigenvalue of the quadratic"},
        {"max-eig", "largest eigenvalue of the quadratic (its L)"},
        {"sigma", "gradient noise level of the quadratic"},
        {"noise", "quadratic noise model: gaussian | sphere"},
        {"samples", "dataset size (logistic, mlp)"},
        {"batch", "samples per stochastic gradient (logistic, mlp)"},
        {"layers", "mlp layer widths, e.g. 2,12,3"},
        {"x0", "explicit start point, comma-separated"},
        {"scheduler",
         "stepsize policy: glyder-theoretical | glyder-practical | constant | "
         "cosine | rsqrt | oracle-inner | oracle-expected"},
        {"eta0", "base stepsize (baselines) or EMA start value"},
        {"beta", "EMA coefficient of the practical policy"},
        {"ema-convention", "beta-on-history | beta-on-instant"},
        {"direction", "aggregate the n gradients by mean | sum"},
        {"bias-correct", "multiply the raw ratio by n/(n-1): true | false"},
        {"smoothness", "estimator for the practical policy: constant | proj1d | gnb"},
        {"curvature-mode", "quadratic-form | rayleigh"},
        {"floor", "lower clamp for smoothness estimates"},
        {"L", "explicit smoothness constant"},
        {"squash", "rsqrt knee parameter"},
        {"horizon", "cosine horizon (0 = run length)"},
        {"optimizer", "direction provider: sgd | momentum | adam"},
        {"n", "stochastic gradients per step"},
        {"steps", "steps per trial"},
        {"seeds", "trial seeds, e.g. 1,2,3"},
        {"out", "output path prefix"},
    };
    for (const auto& k : kKeys)
      options[k.key] =
          cmd->add_option(std::string("--") + k.key, values[k.key], k.help);
  }

  glyder::RunConfig build() const {
    glyder::RunConfig cfg;
    if (!config_path.empty()) glyder::load_config_file(cfg, config_path);
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) glyder::apply_setting(cfg, key, values.at(key));
    return cfg;
  }
};

void print_summary(const glyder::RunSummary& s) {
  std::printf("  seed %llu: final_loss=%.6g  min_grad_sq=%.6g  wall=%.2fs\n",
              static_cast<unsigned long long>(s.seed), s.final_loss, s.min_grad_sq,
              s.wall_seconds);
}

int cmd_run(const ConfigOptions& copts) {
  glyder::RunConfig cfg = copts.build();
  cfg.validate();

  std::vector<glyder::RunRecord> records(cfg.seeds.size());
  glyder::parallel_for(cfg.seeds.size(), [&](std::size_t i) {
    records[i] = glyder::run_trial(cfg, cfg.seeds[i]);
  });

  std::printf("%s on %s, %lld steps, %zu seed(s)\n",
              glyder::names::of(cfg.scheduler.name), glyder::names::of(cfg.problem.kind),
              static_cast<long long>(cfg.steps), cfg.seeds.size());
  for (const auto& r : records) print_summary(r.summary);

  std::vector<glyder::RunSummary> summaries;
  for (const auto& r : records) summaries.push_back(r.summary);
  const nlohmann::json agg = glyder::aggregate_json(summaries);
  std::printf("  aggregate: final_loss %.6g +- %.6g, min_grad_sq %.6g +- %.6g\n",
              agg["final_loss"]["mean"].get<double>(),
              agg["final_loss"]["std"].get<double>(),
              agg["min_grad_sq"]["mean"].get<double>(),
              agg["min_grad_sq"]["std"].get<double>());

  if (!cfg.out.empty()) {
    for (std::size_t i = 0; i < records.size(); ++i)
      glyder::export_csv(records[i],
                         cfg.out + "_seed" + std::to_string(cfg.seeds[i]) + ".csv");
    glyder::write_json(glyder::run_report_json(cfg, records), cfg.out + "_summary.json");
    std::printf("  wrote %s_seed*.csv and %s_summary.json\n", cfg.out.c_str(),
                cfg.out.c_str());
  }
  return 0;
}

int cmd_sweep(const ConfigOptions& copts, const std::string& metric_name,
              std::uint64_t selection_seed, const std::vector<double>& grid_eta0,
              const std::vector<double>& grid_squash) {
  glyder::RunConfig cfg = copts.build();
  cfg.validate();

  glyder::SweepGrid grid = glyder::SweepGrid::defaults_for(cfg.scheduler.name);
  if (!grid_eta0.empty()) grid.eta0s = grid_eta0;
  if (!grid_squash.empty()) grid.squashes = grid_squash;

  glyder::SelectionMetric metric;
  if (metric_name == "final-loss") metric = glyder::SelectionMetric::final_loss;
  else if (metric_name == "min-grad") metric = glyder::SelectionMetric::min_grad_sq;
  else throw std::invalid_argument("unknown metric '" + metric_name +
                                   "' (expected final-loss or min-grad)");

  const glyder::SweepResult res = glyder::sweep(cfg, grid, metric, selection_seed);

  const glyder::SweepPoint& w = res.grid[res.winner];
  std::printf("sweep of %s on %s: %zu grid points, winner eta0=%.6g",
              glyder::names::of(cfg.scheduler.name), glyder::names::of(cfg.problem.kind),
              res.grid.size(), w.eta0);
  if (w.squash > 0.0) std::printf(" squash=%g", w.squash);
  std::printf(" (selection %s=%.6g)\n", metric_name.c_str(),
              glyder::metric_of(w.selection, metric));
  for (const auto& r : res.winner_records) print_summary(r.summary);

  if (!cfg.out.empty()) {
    for (std::size_t i = 0; i < res.winner_records.size(); ++i)
      glyder::export_csv(res.winner_records[i],
                         cfg.out + "_winner_seed" + std::to_string(cfg.seeds[i]) + ".csv");
    glyder::write_json(glyder::to_json(res), cfg.out + "_sweep.json");
    std::printf("  wrote %s_winner_seed*.csv and %s_sweep.json\n", cfg.out.c_str(),
                cfg.out.c_str());
  }
  return 0;
}

int cmd_verify(const std::vector<std::string>& claims, const glyder::VerifyOptions& opts,
               const std::string& out) {
  std::vector<glyder::Claim> todo;
  if (claims.empty() || (claims.size() == 1 && claims[0] == "all"))
    todo = glyder::all_claims();
  else
    for (const std::string& c : claims) todo.push_back(glyder::parse_claim(c));

  bool all_pass = true;
  nlohmann::json out_json = nlohmann::json::array();
  for (glyder::Claim c : todo) {
    const glyder::VerdictReport rep = glyder::verify(c, opts);
    std::fputs(rep.to_text().c_str(), stdout);
    all_pass = all_pass && rep.pass;
    out_json.push_back(glyder::to_json(rep));
  }
  if (!out.empty()) glyder::write_json(out_json, out);
  return all_pass ? 0 : 2;
}

int cmd_plot(const std::vector<std::string>& inputs, std::vector<std::string> labels,
             const std::string& column, bool log_y, const std::string& title,
             const std::string& out) {
  const auto pick = [&](const glyder::StepRow& r) -> double {
    const auto opt = [](const std::optional<double>& v) {
      return v ? *v : std::numeric_limits<double>::quiet_NaN();
    };
    if (column == "loss") return r.loss;
    if (column == "grad") return opt(r.grad_norm_sq_true);
    if (column == "mu") return opt(r.mu);
    if (column == "gamma") return opt(r.gamma);
    if (column == "stepsize") return r.stepsize;
    if (column == "smoothness") return opt(r.smoothness);
    throw std::invalid_argument("unknown column '" + column +
                                "' (expected loss, grad, mu, gamma, stepsize or "
                                "smoothness)");
  };

  while (labels.size() < inputs.size()) {
    std::string stem = inputs[labels.size()];
    const std::size_t slash = stem.find_last_of('/');
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    const std::size_t dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    labels.push_back(stem);
  }

  std::vector<glyder::PlotSeries> series;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const glyder::RunRecord rec = glyder::import_csv(inputs[i]);
    glyder::PlotSeries s;
    s.label = labels[i];
    for (const glyder::StepRow& r : rec.rows) {
      s.xs.push_back(static_cast<double>(r.step));
      s.ys.push_back(pick(r));
    }
    series.push_back(std::move(s));
  }

  glyder::PlotOptions popt;
  popt.title = title.empty() ? column : title;
  popt.y_label = column;
  popt.log_y = log_y;
  glyder::render_plot(series, popt, out);
  std::printf("wrote %s (%zu series)\n", out.c_str(), series.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"benchmark driver for locally optimal stepsize scheduling"};
  app.require_subcommand(1);

  ConfigOptions run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "run one configuration");
  run_opts.attach(run_cmd);

  ConfigOptions sweep_opts;
  std::string metric = "final-loss";
  std::uint64_t selection_seed = 1;
  std::vector<double> grid_eta0, grid_squash;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "grid-search eta0 (and squash for rsqrt)");
  sweep_opts.attach(sweep_cmd);
  sweep_cmd->add_option("--metric", metric, "selection metric: final-loss | min-grad");
  sweep_cmd->add_option("--selection-seed", selection_seed,
                        "seed used for the selection pass");
  sweep_cmd->add_option("--grid-eta0", grid_eta0,
                        "explicit eta0 grid (default: 20 points, 1e-3..1e2)")
      ->delimiter(',');
  sweep_cmd->add_option("--grid-squash", grid_squash,
                        "explicit squash grid for rsqrt")
      ->delimiter(',');

  std::vector<std::string> claims;
  glyder::VerifyOptions vopts;
  std::string verify_out;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check the library's statistical claims");
  verify_cmd->add_option("--claim", claims,
                         "claim name or 'all': variance-gaussian, variance-bound, "
                         "rate-inner-oracle, rate-expected-oracle, rate-estimated, "
                         "sharded-gap, noiseless-fixed-point");
  verify_cmd->add_option("--trials", vopts.trials, "Monte Carlo trials");
  verify_cmd->add_option("--reps", vopts.reps, "repetitions");
  verify_cmd->add_option("--seed-count", vopts.seed_count, "trial seeds for rate claims");
  verify_cmd->add_option("--steps", vopts.steps, "steps per trial");
  verify_cmd->add_option("--n", vopts.n, "gradients per step / shard count");
  verify_cmd->add_option("--sigma", vopts.sigma, "noise level override");
  verify_cmd->add_option("--seed", vopts.seed, "master seed");
  verify_cmd->add_option("--out", verify_out, "write verdicts as JSON");

  std::vector<std::string> plot_inputs, plot_labels;
  std::string plot_column = "loss", plot_title, plot_out = "plot.svg";
  bool plot_log_y = false;
  CLI::App* plot_cmd = app.add_subcommand("plot", "render recorded runs as SVG");
  plot_cmd->add_option("--in", plot_inputs, "input CSV files (one series each)")
      ->required()
      ->expected(-1);
  plot_cmd->add_option("--label", plot_labels, "series labels (default: file stems)");
  plot_cmd->add_option("--column", plot_column,
                       "loss | grad | mu | gamma | stepsize | smoothness");
  plot_cmd->add_flag("--log-y", plot_log_y, "logarithmic y axis");
  plot_cmd->add_option("--title", plot_title, "chart title");
  plot_cmd->add_option("--out", plot_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_opts);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_opts, metric, selection_seed, grid_eta0, grid_squash);
    if (verify_cmd->parsed()) return cmd_verify(claims, vopts, verify_out);
    if (plot_cmd->parsed())
      return cmd_plot(plot_inputs, plot_labels, plot_column, plot_log_y, plot_title,
                      plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
