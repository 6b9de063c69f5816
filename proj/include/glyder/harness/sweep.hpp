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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "glyder/harness/config.hpp"
#include "glyder/harness/io.hpp"
#include "glyder/harness/run.hpp"
#include "glyder/stats.hpp"

namespace glyder {

// Runs fn(0..count-1) across a small thread pool.  Results must be written to
// per-index slots; the call order is unspecified but each index runs once.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mu;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// 20 stepsizes evenly spaced in log10 between 1e-3 and 1e2; the endpoints are
// exact.
inline std::vector<double> default_eta0_grid() {
  std::vector<double> grid(20);
  for (int i = 0; i < 20; ++i) {
    const double e = -3.0 + 5.0 * static_cast<double>(i) / 19.0;
    grid[static_cast<std::size_t>(i)] = std::pow(10.0, e);
  }
  grid.front() = 1e-3;
  grid.back() = 1e2;
  return grid;
}

inline std::vector<double> default_squash_grid() {
  return {0.5, 1.0, 5.0, 10.0, 15.0, 50.0, 100.0, 200.0, 500.0, 1000.0};
}

struct SweepGrid {
  std::vector<double> eta0s;
  std::vector<double> squashes;  // cross-product axis, rsqrt only

  static SweepGrid defaults_for(SchedulerName name) {
    SweepGrid g;
    g.eta0s = default_eta0_grid();
    if (name == SchedulerName::rsqrt) g.squashes = default_squash_grid();
    return g;
  }
};

enum class SelectionMetric { final_loss, min_grad_sq };

inline double metric_of(const RunSummary& s, SelectionMetric m) {
  return m == SelectionMetric::final_loss ? s.final_loss : s.min_grad_sq;
}

struct SweepPoint {
  double eta0 = 0.0;
  double squash = 0.0;  // 0 when not applicable
  RunSummary selection;
};

struct SweepResult {
  std::vector<SweepPoint> grid;
  std::size_t winner = 0;
  RunConfig winner_config;
  std::vector<RunRecord> winner_records;  // one per seed in cfg.seeds
  SelectionMetric metric = SelectionMetric::final_loss;
};

// Grid search: every point runs once with the selection seed, the best point
// by the chosen metric is rerun with the full seed list.  NaN metrics
// (diverged runs) lose against any finite value.
inline SweepResult sweep(const RunConfig& base, const SweepGrid& grid,
                         SelectionMetric metric, std::uint64_t selection_seed) {
  base.validate();
  if (grid.eta0s.empty()) throw std::invalid_argument("sweep: empty eta0 grid");

  std::vector<RunConfig> configs;
  for (const double squash :
       grid.squashes.empty() ? std::vector<double>{0.0} : grid.squashes) {
    for (const double eta0 : grid.eta0s) {
      RunConfig c = base;
      c.scheduler.eta0 = eta0;
      if (squash > 0.0) c.scheduler.squash = squash;
      configs.push_back(std::move(c));
    }
  }

  SweepResult result;
  result.metric = metric;
  result.grid.resize(configs.size());
  parallel_for(configs.size(), [&](std::size_t i) {
    const RunRecord rec = run_trial(configs[i], selection_seed);
    SweepPoint pt;
    pt.eta0 = configs[i].scheduler.eta0;
    pt.squash = grid.squashes.empty() ? 0.0 : configs[i].scheduler.squash;
    pt.selection = rec.summary;
    result.grid[i] = pt;
  });

  std::size_t best = 0;
  bool have_best = false;
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    const double v = metric_of(result.grid[i].selection, metric);
    if (std::isnan(v)) continue;
    if (!have_best || v < metric_of(result.grid[best].selection, metric)) {
      best = i;
      have_best = true;
    }
  }
  if (!have_best)
    throw std::runtime_error("sweep: every grid point diverged to NaN");

  result.winner = best;
  result.winner_config = configs[best];
  result.winner_records.resize(base.seeds.size());
  parallel_for(base.seeds.size(), [&](std::size_t i) {
    result.winner_records[i] = run_trial(result.winner_config, base.seeds[i]);
  });
  return result;
}

inline nlohmann::json to_json(const SweepResult& r) {
  nlohmann::json j;
  j["metric"] =
      r.metric == SelectionMetric::final_loss ? "final-loss" : "min-grad";
  for (const SweepPoint& p : r.grid) {
    nlohmann::json pj;
    pj["eta0"] = p.eta0;
    if (p.squash > 0.0) pj["squash"] = p.squash;
    pj["selection"] = to_json(p.selection);
    j["grid"].push_back(pj);
  }
  j["winner"] = to_json(r.winner_config);
  std::vector<RunSummary> summaries;
  for (const RunRecord& rec : r.winner_records) {
    j["winner_per_seed"].push_back(to_json(rec.summary));
    summaries.push_back(rec.summary);
  }
  j["winner_aggregate"] = aggregate_json(summaries);
  return j;
}

}  // namespace glyder
