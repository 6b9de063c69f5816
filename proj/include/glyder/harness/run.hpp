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

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "glyder/harness/config.hpp"
#include "glyder/optimizers.hpp"
#include "glyder/problems.hpp"
#include "glyder/schedulers.hpp"
#include "glyder/smoothness.hpp"

namespace glyder {

// One row per completed step t = 1..T.  loss and grad_norm_sq_true are
// evaluated at the new iterate x_t over the full data; mu/gamma/smoothness
// are the statistics that produced the step and stay empty for policies that
// do not compute them.
struct StepRow {
  std::int64_t step = 0;
  double loss = 0.0;
  std::optional<double> grad_norm_sq_true;
  std::optional<double> mu;
  std::optional<double> gamma;
  double stepsize = 0.0;
  std::optional<double> smoothness;
};

struct RunSummary {
  std::uint64_t seed = 0;
  double min_grad_sq = std::numeric_limits<double>::infinity();
  double final_loss = 0.0;
  double wall_seconds = 0.0;
};

struct RunRecord {
  std::vector<StepRow> rows;
  RunSummary summary;
};

inline RunSummary summarize(const std::vector<StepRow>& rows, std::uint64_t seed,
                            double wall_seconds) {
  RunSummary s;
  s.seed = seed;
  s.wall_seconds = wall_seconds;
  for (const StepRow& r : rows)
    if (r.grad_norm_sq_true && *r.grad_norm_sq_true < s.min_grad_sq)
      s.min_grad_sq = *r.grad_norm_sq_true;
  s.final_loss = rows.empty() ? 0.0 : rows.back().loss;
  return s;
}

// Runs one trial to completion.  Deterministic in (cfg, seed): the problem
// data depends only on cfg.problem.data_seed, and all stochastic draws come
// from a stream derived from (data_seed, seed).
inline RunRecord run_trial(const RunConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();

  ProblemHandle p = cfg.problem.make();
  p.reset_stream(RngStream::derive(cfg.problem.data_seed, seed).split(0x7E1A1));

  Vec x = p.initial_point();
  OptimizerState opt;
  opt.kind = cfg.optimizer;

  const SchedulerSpec& sch = cfg.scheduler;
  GlyderState glyder_state;
  SmoothnessEstimator sm;
  double L = 0.0;
  BaselineSchedule baseline;

  switch (sch.name) {
    case SchedulerName::glyder_theoretical:
    case SchedulerName::oracle_inner:
      L = cfg.resolve_L(p);
      break;
    case SchedulerName::oracle_expected:
      L = cfg.resolve_L(p);
      break;
    case SchedulerName::glyder_practical:
      glyder_state = GlyderState::init(sch.eta0, sch.beta, sch.ema);
      sm.kind = sch.smoothness;
      sm.curvature_mode = sch.curvature;
      sm.floor = sch.floor;
      if (sch.smoothness == SmoothnessKind::constant) sm.constant_L = cfg.resolve_L(p);
      break;
    case SchedulerName::constant:
      baseline = BaselineSchedule::constant(sch.eta0);
      break;
    case SchedulerName::cosine:
      baseline = BaselineSchedule::cosine(sch.eta0,
                                          sch.horizon > 0 ? sch.horizon : cfg.steps);
      break;
    case SchedulerName::rsqrt:
      baseline = BaselineSchedule::rsqrt(sch.eta0, sch.squash);
      break;
  }

  RunRecord rec;
  rec.rows.reserve(static_cast<std::size_t>(cfg.steps));

  for (std::int64_t t = 1; t <= cfg.steps; ++t) {
    StepRow row;
    row.step = t;

    switch (sch.name) {
      case SchedulerName::glyder_theoretical: {
        TheoreticalStepResult r =
            glyder_theoretical_step(p, x, cfg.n, L, sch.direction);
        x = std::move(r.x_next);
        row.mu = r.diag.mu;
        row.gamma = r.diag.gamma;
        row.stepsize = r.diag.stepsize;
        row.smoothness = r.diag.smoothness;
        break;
      }
      case SchedulerName::glyder_practical: {
        PracticalOptions opts;
        opts.direction = sch.direction;
        opts.bias_correct = sch.bias_correct;
        PracticalStepResult r =
            glyder_practical_step(glyder_state, p, x, cfg.n, sm, opt, opts);
        x = std::move(r.x_next);
        glyder_state = r.state;
        row.mu = r.diag.mu;
        row.gamma = r.diag.gamma;
        row.stepsize = r.diag.stepsize;
        row.smoothness = r.diag.smoothness;
        break;
      }
      default: {
        // Fixed schedules and oracle stepsizes share a common loop: sample,
        // aggregate, pick eta, move.
        GradientSet set = p.sample_gradient_set(x, cfg.n);
        Vec agg = detail::aggregate(set.grads, sch.direction);
        const Vec dir = direction(opt, agg);
        double eta = 0.0;
        switch (sch.name) {
          case SchedulerName::oracle_inner:
            eta = oracle_inner_product_stepsize(p.full_grad(x), dir, L);
            row.smoothness = L;
            break;
          case SchedulerName::oracle_expected:
            eta = oracle_expected_stepsize(norm_sq(p.full_grad(x)),
                                           cfg.problem.sigma * cfg.problem.sigma, L);
            row.smoothness = L;
            break;
          default:
            eta = baseline_stepsize(baseline, t - 1);
            break;
        }
        axpy(-eta, dir, x);
        row.stepsize = eta;
        break;
      }
    }

    row.loss = p.loss(x);
    row.grad_norm_sq_true = norm_sq(p.full_grad(x));
    rec.rows.push_back(std::move(row));
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  rec.summary = summarize(rec.rows, seed, wall);
  return rec;
}

}  // namespace glyder
