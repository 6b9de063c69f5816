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

#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "glyder/harness/config.hpp"
#include "glyder/harness/run.hpp"
#include "glyder/stats.hpp"

namespace glyder {

// Shortest-exact decimal form: parsing the text back yields the same double.
inline std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline const char* kCsvHeader = "step,loss,grad_norm_sq_true,mu,gamma,stepsize,smoothness";

inline void export_csv(const RunRecord& rec, std::ostream& out) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? format_exact(*v) : std::string();
  };
  out << kCsvHeader << "\n";
  for (const StepRow& r : rec.rows) {
    out << r.step << ',' << format_exact(r.loss) << ',' << opt(r.grad_norm_sq_true)
        << ',' << opt(r.mu) << ',' << opt(r.gamma) << ',' << format_exact(r.stepsize)
        << ',' << opt(r.smoothness) << "\n";
  }
}

inline void export_csv(const RunRecord& rec, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  export_csv(rec, out);
}

// Reads a file written by export_csv.  The summary is recomputed from the
// rows; wall time is not part of the on-disk format.
inline RunRecord import_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw std::runtime_error("csv: unexpected header '" + line + "'");

  RunRecord rec;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    // A trailing empty field is not returned by getline; restore it.
    while (cells.size() < 7) cells.push_back("");
    if (cells.size() != 7)
      throw std::runtime_error("csv: expected 7 fields, got line '" + line + "'");

    const auto num = [](const std::string& s) { return std::stod(s); };
    const auto opt = [&](const std::string& s) {
      return s.empty() ? std::optional<double>() : std::optional<double>(num(s));
    };
    StepRow r;
    r.step = std::stoll(cells[0]);
    r.loss = num(cells[1]);
    r.grad_norm_sq_true = opt(cells[2]);
    r.mu = opt(cells[3]);
    r.gamma = opt(cells[4]);
    r.stepsize = num(cells[5]);
    r.smoothness = opt(cells[6]);
    rec.rows.push_back(std::move(r));
  }
  rec.summary = summarize(rec.rows, 0, 0.0);
  return rec;
}

inline RunRecord import_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return import_csv(in);
}

// ---------------------------------------------------------------------------
// JSON summaries.

inline nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["problem"] = names::of(cfg.problem.kind);
  j["data-seed"] = cfg.problem.data_seed;
  switch (cfg.problem.kind) {
    case ProblemKind::noisy_quadratic:
      j["dim"] = cfg.problem.dim;
      j["min-eig"] = cfg.problem.min_eig;
      j["max-eig"] = cfg.problem.max_eig;
      j["sigma"] = cfg.problem.sigma;
      j["noise"] = names::of(cfg.problem.noise);
      break;
    case ProblemKind::logistic_regression:
      j["dim"] = cfg.problem.dim;
      j["samples"] = cfg.problem.n_samples;
      j["batch"] = cfg.problem.batch;
      break;
    case ProblemKind::mlp_classifier:
      j["layers"] = cfg.problem.layers;
      j["samples"] = cfg.problem.n_samples;
      j["batch"] = cfg.problem.batch;
      break;
  }
  if (!cfg.problem.x0.empty()) j["x0"] = cfg.problem.x0;
  j["scheduler"] = names::of(cfg.scheduler.name);
  j["eta0"] = cfg.scheduler.eta0;
  if (cfg.scheduler.name == SchedulerName::glyder_practical) {
    j["beta"] = cfg.scheduler.beta;
    j["ema-convention"] = names::of(cfg.scheduler.ema);
    j["smoothness"] = names::of(cfg.scheduler.smoothness);
    j["curvature-mode"] = names::of(cfg.scheduler.curvature);
    j["floor"] = cfg.scheduler.floor;
    j["bias-correct"] = cfg.scheduler.bias_correct;
  }
  if (cfg.scheduler.name == SchedulerName::glyder_practical ||
      cfg.scheduler.name == SchedulerName::glyder_theoretical)
    j["direction"] = names::of(cfg.scheduler.direction);
  if (cfg.scheduler.L > 0.0) j["L"] = cfg.scheduler.L;
  if (cfg.scheduler.name == SchedulerName::cosine)
    j["horizon"] = cfg.scheduler.horizon > 0 ? cfg.scheduler.horizon : cfg.steps;
  if (cfg.scheduler.name == SchedulerName::rsqrt) j["squash"] = cfg.scheduler.squash;
  j["optimizer"] = names::of(cfg.optimizer);
  j["n"] = cfg.n;
  j["steps"] = cfg.steps;
  j["seeds"] = cfg.seeds;
  return j;
}

inline nlohmann::json to_json(const RunSummary& s) {
  return nlohmann::json{{"seed", s.seed},
                        {"min_grad_sq", s.min_grad_sq},
                        {"final_loss", s.final_loss},
                        {"wall_seconds", s.wall_seconds}};
}

// Mean and sample standard deviation of a summary statistic across seeds.
inline nlohmann::json aggregate_json(const std::vector<RunSummary>& summaries) {
  const auto stat = [&](auto field) {
    RunningMoments m;
    for (const RunSummary& s : summaries) m.push(field(s));
    nlohmann::json j;
    j["mean"] = m.mean();
    j["std"] = summaries.size() > 1 ? m.stddev() : 0.0;
    return j;
  };
  nlohmann::json j;
  j["final_loss"] = stat([](const RunSummary& s) { return s.final_loss; });
  j["min_grad_sq"] = stat([](const RunSummary& s) { return s.min_grad_sq; });
  return j;
}

inline nlohmann::json run_report_json(const RunConfig& cfg,
                                      const std::vector<RunRecord>& records) {
  nlohmann::json j;
  j["config"] = to_json(cfg);
  std::vector<RunSummary> summaries;
  for (const RunRecord& r : records) {
    j["per_seed"].push_back(to_json(r.summary));
    summaries.push_back(r.summary);
  }
  j["aggregate"] = aggregate_json(summaries);
  return j;
}

inline void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace glyder
