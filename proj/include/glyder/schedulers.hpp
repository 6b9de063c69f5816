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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "glyder/estimators.hpp"
#include "glyder/optimizers.hpp"
#include "glyder/problems.hpp"
#include "glyder/smoothness.hpp"
#include "glyder/vec.hpp"

namespace glyder {

// ---------------------------------------------------------------------------
// Oracle stepsizes.  These need information a real run does not have (the
// exact gradient, or the exact noise level) and exist as references for the
// estimator-driven rules below.

// <true_grad, g> / (L |g|^2): the stepsize that maximizes the guaranteed
// one-step decrease along g for an L-smooth loss.  May be negative when g
// points uphill; deliberately unclipped.  Zero g gives zero (no move).
inline double oracle_inner_product_stepsize(const Vec& true_grad, const Vec& g,
                                            double L) {
  if (!(L > 0.0))
    throw std::invalid_argument("oracle_inner_product_stepsize: L must be > 0");
  const double g2 = norm_sq(g);
  if (g2 == 0.0) return 0.0;
  return dot(true_grad, g) / (L * g2);
}

// (1/L) |grad|^2 / (|grad|^2 + sigma^2): the expectation of the rule above
// under zero-mean noise with second moment sigma^2.  Recovers 1/L when
// sigma = 0 and a positive gradient norm.
inline double oracle_expected_stepsize(double norm_sq_grad, double sigma_sq,
                                       double L) {
  if (!(L > 0.0))
    throw std::invalid_argument("oracle_expected_stepsize: L must be > 0");
  if (norm_sq_grad < 0.0 || sigma_sq < 0.0)
    throw std::invalid_argument("oracle_expected_stepsize: negative moment");
  const double denom = norm_sq_grad + sigma_sq;
  if (denom == 0.0) return 0.0;
  return norm_sq_grad / (L * denom);
}

// ---------------------------------------------------------------------------
// Exponential moving average of the instantaneous stepsize.  The two
// conventions differ in which side carries the decay coefficient beta:
//
//   beta_on_history: eta = beta * prev + (1 - beta) * inst   (slow, smooth)
//   beta_on_instant: eta = (1 - beta) * prev + beta * inst   (fast, reactive)
//
// beta_on_history with beta = 0.999 is the default.

enum class EmaConvention { beta_on_history, beta_on_instant };

inline double ema_update(double prev, double inst, double beta, EmaConvention c) {
  if (beta < 0.0 || beta >= 1.0)
    throw std::invalid_argument("ema_update: beta must be in [0, 1)");
  return c == EmaConvention::beta_on_history
             ? beta * prev + (1.0 - beta) * inst
             : (1.0 - beta) * prev + beta * inst;
}

// Mutable state of the practical scheduler.  eta starts at eta0 and is
// folded toward each new instantaneous stepsize by the EMA.
struct GlyderState {
  double eta = 0.0;
  double eta0 = 0.0;
  double beta = 0.999;
  std::int64_t step = 0;
  EmaConvention convention = EmaConvention::beta_on_history;

  static GlyderState init(double eta0, double beta = 0.999,
                          EmaConvention c = EmaConvention::beta_on_history) {
    if (!(eta0 >= 0.0)) throw std::invalid_argument("GlyderState: eta0 must be >= 0");
    if (beta < 0.0 || beta >= 1.0)
      throw std::invalid_argument("GlyderState: beta must be in [0, 1)");
    GlyderState s;
    s.eta = eta0;
    s.eta0 = eta0;
    s.beta = beta;
    s.convention = c;
    return s;
  }
};

// Whether the update moves along the mean of the sampled gradients or their
// sum.  Mean keeps the displacement scale independent of n and is the
// default; sum is the literal aggregate.
enum class DirectionRule { mean, sum };

// Per-step observability: the two estimator statistics, the clipped ratio,
// the stepsize actually applied, and the smoothness value used.
struct StepDiagnostics {
  double mu = 0.0;
  double gamma = 0.0;
  double ratio = 0.0;
  double stepsize = 0.0;
  double smoothness = 0.0;
};

namespace detail {

inline Vec aggregate(const std::vector<Vec>& grads, DirectionRule rule) {
  Vec total = sum(grads);
  if (rule == DirectionRule::mean)
    scale(total, 1.0 / static_cast<double>(grads.size()));
  return total;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two-sample step: draws one gradient set for the direction and a second,
// independent set for the stepsize statistics, so the multiplier
// mu/gamma (normalized mode) is independent of the direction it scales.
// Stepsize is (1/L) * clipped ratio with a known smoothness constant L.

struct TheoreticalStepResult {
  Vec x_next;
  StepDiagnostics diag;
};

inline TheoreticalStepResult glyder_theoretical_step(
    ProblemHandle& p, const Vec& x, std::size_t n, double L,
    DirectionRule rule = DirectionRule::mean) {
  if (n < 2)
    throw std::invalid_argument("glyder_theoretical_step: n must be >= 2");
  if (!(L > 0.0))
    throw std::invalid_argument("glyder_theoretical_step: L must be > 0");

  GradientSet direction_set = p.sample_gradient_set(x, n);
  GradientSet estimate_set = p.sample_gradient_set(x, n);

  const NormEstimate est =
      estimate(GradientBatch{estimate_set.grads}, EstimatorMode::normalized);

  TheoreticalStepResult out;
  out.diag.mu = est.mu;
  out.diag.gamma = est.gamma;
  out.diag.ratio = est.ratio;
  out.diag.smoothness = L;
  out.diag.stepsize = est.ratio / L;

  const Vec dir = detail::aggregate(direction_set.grads, rule);
  out.x_next = x;
  axpy(-out.diag.stepsize, dir, out.x_next);
  return out;
}

// ---------------------------------------------------------------------------
// Single-sample step: one gradient set serves both the direction and the
// stepsize statistics (raw mode), the smoothness value comes from the
// configured estimator on the same batch, and the applied stepsize is the
// EMA of the instantaneous one.

struct PracticalOptions {
  DirectionRule direction = DirectionRule::mean;
  // Multiplies the raw ratio by n/(n-1), undoing its (n-1)/n noiseless bias.
  bool bias_correct = false;
};

struct PracticalStepResult {
  Vec x_next;
  GlyderState state;
  StepDiagnostics diag;
};

// General form: the optimizer turns the aggregated gradient into the update
// direction (plain SGD state reproduces the gradient itself).
inline PracticalStepResult glyder_practical_step(const GlyderState& state,
                                                 ProblemHandle& p, const Vec& x,
                                                 std::size_t n,
                                                 const SmoothnessEstimator& sm,
                                                 OptimizerState& opt,
                                                 const PracticalOptions& opts = {}) {
  if (n < 2)
    throw std::invalid_argument("glyder_practical_step: n must be >= 2");

  GradientSet set = p.sample_gradient_set(x, n);
  const NormEstimate est = estimate(GradientBatch{set.grads}, EstimatorMode::raw);

  Vec mean_grad = detail::aggregate(set.grads, DirectionRule::mean);
  Vec agg = mean_grad;
  if (opts.direction == DirectionRule::sum)
    scale(agg, static_cast<double>(n));
  const Vec dir = direction(opt, agg);

  const double L_t = estimate_L(sm, p, x, mean_grad, dir, set.combined);

  double ratio = est.ratio;
  if (opts.bias_correct)
    ratio *= static_cast<double>(n) / static_cast<double>(n - 1);
  const double inst = ratio / L_t;

  PracticalStepResult out;
  out.state = state;
  out.state.eta = ema_update(state.eta, inst, state.beta, state.convention);
  out.state.step = state.step + 1;

  out.diag.mu = est.mu;
  out.diag.gamma = est.gamma;
  out.diag.ratio = ratio;
  out.diag.smoothness = L_t;
  out.diag.stepsize = out.state.eta;

  out.x_next = x;
  axpy(-out.state.eta, dir, out.x_next);
  return out;
}

// Plain form without a direction provider: moves along the aggregated
// gradient itself.
inline PracticalStepResult glyder_practical_step(const GlyderState& state,
                                                 ProblemHandle& p, const Vec& x,
                                                 std::size_t n,
                                                 const SmoothnessEstimator& sm,
                                                 const PracticalOptions& opts = {}) {
  OptimizerState plain = OptimizerState::sgd();
  return glyder_practical_step(state, p, x, n, sm, plain, opts);
}

// ---------------------------------------------------------------------------
// Fixed comparison schedules.

enum class BaselineKind { constant, cosine, rsqrt };

struct BaselineSchedule {
  BaselineKind kind = BaselineKind::constant;
  double eta0 = 0.0;
  std::int64_t horizon = 0;  // cosine: anneals to zero at t = horizon
  double squash = 0.0;       // rsqrt: decay starts to bite around t = squash

  static BaselineSchedule constant(double eta0) {
    return BaselineSchedule{BaselineKind::constant, eta0, 0, 0.0};
  }
  static BaselineSchedule cosine(double eta0, std::int64_t horizon) {
    if (horizon < 1)
      throw std::invalid_argument("BaselineSchedule: cosine horizon must be >= 1");
    return BaselineSchedule{BaselineKind::cosine, eta0, horizon, 0.0};
  }
  static BaselineSchedule rsqrt(double eta0, double squash) {
    if (!(squash > 0.0))
      throw std::invalid_argument("BaselineSchedule: rsqrt squash must be > 0");
    return BaselineSchedule{BaselineKind::rsqrt, eta0, 0, squash};
  }
};

// Stepsize at step t (t = 0 is the first step).
inline double baseline_stepsize(const BaselineSchedule& sched, std::int64_t t) {
  if (t < 0) throw std::invalid_argument("baseline_stepsize: t must be >= 0");
  switch (sched.kind) {
    case BaselineKind::constant:
      return sched.eta0;
    case BaselineKind::cosine: {
      if (t > sched.horizon)
        throw std::invalid_argument("baseline_stepsize: t beyond cosine horizon");
      const double phase = std::numbers::pi * static_cast<double>(t) /
                           static_cast<double>(sched.horizon);
      return sched.eta0 * 0.5 * (1.0 + std::cos(phase));
    }
    case BaselineKind::rsqrt:
      return sched.eta0 * std::sqrt(sched.squash /
                                    (static_cast<double>(t) + sched.squash));
  }
  throw std::logic_error("baseline_stepsize: unknown kind");
}

}  // namespace glyder
