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
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "glyder/estimators.hpp"
#include "glyder/harness/config.hpp"
#include "glyder/harness/run.hpp"
#include "glyder/harness/sweep.hpp"
#include "glyder/sharding.hpp"
#include "glyder/stats.hpp"

namespace glyder {

// Statistical claims the library's design rests on, each checkable at desk
// scale in seconds:
//
//   variance_gaussian     exact variance formula for mu under Gaussian noise
//   variance_bound        distribution-free variance bound (sphere noise)
//   rate_inner_oracle     min grad^2 rate for the inner-product stepsize,
//                         single stochastic gradient per step
//   rate_expected_oracle  same rate for the expected (noise-discounted)
//                         stepsize
//   rate_estimated        same rate, noise term divided by sqrt(n), for the
//                         two-sample estimated stepsize with no tuning
//   sharded_gap           on sharded real-data gradients, mu is unbiased for
//                         the full gradient norm while the naive squared mean
//                         overshoots by exactly the per-shard noise level / n
//   noiseless_fixed_point at sigma = 0 the stepsize rules collapse to their
//                         closed forms exactly
enum class Claim {
  variance_gaussian,
  variance_bound,
  rate_inner_oracle,
  rate_expected_oracle,
  rate_estimated,
  sharded_gap,
  noiseless_fixed_point,
};

inline const char* claim_name(Claim c) {
  switch (c) {
    case Claim::variance_gaussian: return "variance-gaussian";
    case Claim::variance_bound: return "variance-bound";
    case Claim::rate_inner_oracle: return "rate-inner-oracle";
    case Claim::rate_expected_oracle: return "rate-expected-oracle";
    case Claim::rate_estimated: return "rate-estimated";
    case Claim::sharded_gap: return "sharded-gap";
    case Claim::noiseless_fixed_point: return "noiseless-fixed-point";
  }
  return "?";
}

inline Claim parse_claim(const std::string& s) {
  for (Claim c : {Claim::variance_gaussian, Claim::variance_bound,
                  Claim::rate_inner_oracle, Claim::rate_expected_oracle,
                  Claim::rate_estimated, Claim::sharded_gap,
                  Claim::noiseless_fixed_point})
    if (s == claim_name(c)) return c;
  throw std::invalid_argument("unknown claim '" + s + "'");
}

// Optional overrides for a claim's default parameters.  Defaults reproduce
// the library's acceptance setup.
struct VerifyOptions {
  std::optional<std::int64_t> trials;
  std::optional<int> reps;
  std::optional<int> seed_count;
  std::optional<std::int64_t> steps;
  std::optional<int> n;
  std::optional<double> sigma;
  std::optional<std::uint64_t> seed;
};

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double target = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerdictReport {
  Claim claim = Claim::variance_gaussian;
  bool pass = false;
  std::vector<CheckResult> checks;

  std::string to_text() const {
    std::ostringstream os;
    os << (pass ? "[PASS] " : "[FAIL] ") << claim_name(claim) << "\n";
    for (const CheckResult& c : checks) {
      os << "       " << (c.pass ? "ok   " : "FAIL ") << c.name << ": measured "
         << c.measured << ", target " << c.target;
      if (!c.detail.empty()) os << "  (" << c.detail << ")";
      os << "\n";
    }
    return os.str();
  }
};

inline nlohmann::json to_json(const VerdictReport& r) {
  nlohmann::json j;
  j["claim"] = claim_name(r.claim);
  j["pass"] = r.pass;
  for (const CheckResult& c : r.checks)
    j["checks"].push_back({{"name", c.name},
                           {"measured", c.measured},
                           {"target", c.target},
                           {"pass", c.pass},
                           {"detail", c.detail}});
  return j;
}

namespace detail {

inline CheckResult check(std::string name, double measured, double target,
                         bool pass, std::string detail = "") {
  return CheckResult{std::move(name), measured, target, pass, std::move(detail)};
}

inline void finalize(VerdictReport& r) {
  r.pass = true;
  for (const CheckResult& c : r.checks) r.pass = r.pass && c.pass;
}

// Shared quadratic for the rate claims: d = 20, eigenvalues 0.1..2.0, so
// L = 2, with a seeded Gaussian start point (R = f(x0) is then exact).
inline ProblemSpec rate_problem(double sigma) {
  ProblemSpec p;
  p.kind = ProblemKind::noisy_quadratic;
  p.dim = 20;
  p.min_eig = 0.1;
  p.max_eig = 2.0;
  p.sigma = sigma;
  p.data_seed = 7;
  return p;
}

// Seed-averaged min grad^2 against factor * (2LR/T + (sigma/noise_scale) *
// sqrt(2LR/T)).
inline VerdictReport rate_claim(Claim claim, SchedulerName scheduler,
                                std::size_t n, double noise_scale, double factor,
                                const VerifyOptions& opts) {
  const double sigma = opts.sigma.value_or(0.5);
  RunConfig cfg;
  cfg.problem = rate_problem(sigma);
  cfg.scheduler.name = scheduler;
  cfg.n = opts.n ? static_cast<std::size_t>(*opts.n) : n;
  cfg.steps = opts.steps.value_or(500);

  const int seed_count = opts.seed_count.value_or(50);
  if (seed_count < 1) throw std::invalid_argument("verify: seed_count must be >= 1");

  ProblemHandle probe = cfg.problem.make();
  const double L = *probe.constants().L;
  const double R = *probe.constants().R;
  const double base = 2.0 * L * R / static_cast<double>(cfg.steps);
  const double bound = base + sigma / noise_scale * std::sqrt(base);

  std::vector<double> mins(static_cast<std::size_t>(seed_count));
  parallel_for(mins.size(), [&](std::size_t i) {
    mins[i] = run_trial(cfg, static_cast<std::uint64_t>(i + 1)).summary.min_grad_sq;
  });
  RunningMoments m;
  for (double v : mins) m.push(v);

  VerdictReport rep;
  rep.claim = claim;
  std::ostringstream detail;
  detail << "L=" << L << " R=" << R << " T=" << cfg.steps << " seeds=" << seed_count
         << " bound=" << bound;
  rep.checks.push_back(check("seed_avg_min_grad_sq", m.mean(), factor * bound,
                             m.mean() <= factor * bound, detail.str()));
  finalize(rep);
  return rep;
}

}  // namespace detail

inline VerdictReport verify(Claim claim, const VerifyOptions& opts = {}) {
  VerdictReport rep;
  rep.claim = claim;

  switch (claim) {
    case Claim::variance_gaussian: {
      const std::int64_t trials = opts.trials.value_or(1'000'000);
      const int n = opts.n.value_or(8);
      const double sigma = opts.sigma.value_or(1.0);
      const int d = 10;
      const MonteCarloMoments mc =
          monte_carlo_moments(1.0, sigma * sigma, n, d, trials,
                              opts.seed.value_or(0xE57), NoiseModel::gaussian);
      const double se = std::sqrt(mc.variance / static_cast<double>(mc.trials));
      rep.checks.push_back(detail::check("mean_unbiased", mc.mean, 1.0,
                                         std::abs(mc.mean - 1.0) <= 3.0 * se,
                                         "tolerance 3 standard errors = " +
                                             std::to_string(3.0 * se)));
      const double target = variance_gaussian(1.0, sigma * sigma, n, d);
      const double rel = std::abs(mc.variance - target) / target;
      rep.checks.push_back(detail::check("variance_exact", mc.variance, target,
                                         rel <= 0.05, "relative error " +
                                                          std::to_string(rel)));
      break;
    }

    case Claim::variance_bound: {
      const int reps = opts.reps.value_or(20);
      const std::int64_t trials = opts.trials.value_or(20'000);
      const int n = opts.n.value_or(8);
      const double sigma = opts.sigma.value_or(1.0);
      const double bound = variance_bound(1.0, sigma * sigma, n);
      double max_var = 0.0;
      RunningMoments means;
      bool all_within = true;
      for (int r = 0; r < reps; ++r) {
        const MonteCarloMoments mc = monte_carlo_moments(
            1.0, sigma * sigma, n, 10, trials,
            RngStream(opts.seed.value_or(0xB0D)).split(static_cast<std::uint64_t>(r)).key(),
            NoiseModel::sphere);
        max_var = std::max(max_var, mc.variance);
        all_within = all_within && mc.variance <= bound;
        means.push(mc.mean);
      }
      rep.checks.push_back(detail::check(
          "all_reps_within_bound", max_var, bound, all_within,
          std::to_string(reps) + " repetitions, max shown"));
      const double se = means.std_error();
      rep.checks.push_back(detail::check("mean_unbiased", means.mean(), 1.0,
                                         std::abs(means.mean() - 1.0) <= 4.0 * se,
                                         "tolerance 4 standard errors"));
      break;
    }

    case Claim::rate_inner_oracle:
      return detail::rate_claim(claim, SchedulerName::oracle_inner, 1, 1.0, 1.1,
                                opts);
    case Claim::rate_expected_oracle:
      return detail::rate_claim(claim, SchedulerName::oracle_expected, 1, 1.0, 1.1,
                                opts);
    case Claim::rate_estimated: {
      const std::size_t n = opts.n ? static_cast<std::size_t>(*opts.n) : 16;
      return detail::rate_claim(claim, SchedulerName::glyder_theoretical, n,
                                std::sqrt(static_cast<double>(n)), 1.25, opts);
    }

    case Claim::sharded_gap: {
      const int reps = opts.reps.value_or(1000);
      const std::size_t k = opts.n ? static_cast<std::size_t>(*opts.n) : 8;
      constexpr std::size_t kTotalBatch = 64;

      ProblemSpec spec;
      spec.kind = ProblemKind::logistic_regression;
      spec.dim = 6;
      spec.n_samples = 400;
      spec.batch = 8;
      spec.data_seed = 11;
      ProblemHandle p = spec.make();
      p.reset_stream(RngStream::derive(spec.data_seed, opts.seed.value_or(0x6A9)));

      const Vec x = p.initial_point();
      const Vec full = p.full_grad(x);
      const double g2 = norm_sq(full);

      RunningMoments mu_m, gamma_m, gap_minus_noise, gamma_gap;
      for (int r = 0; r < reps; ++r) {
        ShardSet shards = shard_gradients(p, x, BatchSelector::fresh(kTotalBatch), k);
        const NormEstimate est =
            estimate(GradientBatch{shards.grads}, EstimatorMode::normalized);
        double noise = 0.0;
        for (const Vec& h : shards.grads) {
          Vec delta = h;
          axpy(-1.0, full, delta);
          noise += norm_sq(delta);
        }
        noise /= static_cast<double>(shards.grads.size());
        mu_m.push(est.mu);
        gamma_m.push(est.gamma);
        gap_minus_noise.push((est.gamma - est.mu) - noise / static_cast<double>(k));
        gamma_gap.push(est.gamma - g2);
      }

      rep.checks.push_back(detail::check(
          "mu_unbiased_for_full_grad_sq", mu_m.mean(), g2,
          std::abs(mu_m.mean() - g2) <= 3.0 * mu_m.std_error(),
          "tolerance 3 standard errors = " + std::to_string(3.0 * mu_m.std_error())));
      rep.checks.push_back(detail::check(
          "naive_minus_mu_equals_noise_over_n", gap_minus_noise.mean(), 0.0,
          std::abs(gap_minus_noise.mean()) <= 3.0 * gap_minus_noise.std_error(),
          "tolerance 3 standard errors = " +
              std::to_string(3.0 * gap_minus_noise.std_error())));
      rep.checks.push_back(detail::check(
          "naive_overshoots", gamma_m.mean(), g2,
          gamma_gap.mean() >= 3.0 * gamma_gap.std_error(),
          "squared shard mean must exceed the true squared norm"));
      break;
    }

    case Claim::noiseless_fixed_point: {
      const double sigma = opts.sigma.value_or(0.0);
      RunConfig cfg;
      cfg.problem.kind = ProblemKind::noisy_quadratic;
      cfg.problem.dim = 2;
      cfg.problem.min_eig = 1.0;
      cfg.problem.max_eig = 2.0;
      cfg.problem.sigma = sigma;
      cfg.problem.x0 = {1.0, 1.0};
      cfg.problem.data_seed = 3;
      cfg.n = 8;
      cfg.steps = opts.steps.value_or(30);

      // Two-sample rule: stepsize must sit at 1/L on every step.
      cfg.scheduler = SchedulerSpec{};
      cfg.scheduler.name = SchedulerName::glyder_theoretical;
      const RunRecord theo = run_trial(cfg, 1);
      double max_dev = 0.0;
      for (const StepRow& r : theo.rows)
        max_dev = std::max(max_dev, std::abs(r.stepsize - 0.5));
      rep.checks.push_back(detail::check("two_sample_stepsize_is_inverse_L",
                                          max_dev, 0.0, max_dev == 0.0,
                                          "max |stepsize - 1/L| over 30 steps"));

      // Single-sample rule from an integer start: the raw ratio is exactly
      // (n-1)/n on the first step.
      {
        ProblemHandle p = cfg.problem.make();
        p.reset_stream(RngStream::derive(cfg.problem.data_seed, 2));
        GlyderState st = GlyderState::init(0.0, 0.0);
        PracticalStepResult one = glyder_practical_step(
            st, p, p.initial_point(), cfg.n, SmoothnessEstimator::constant(2.0));
        rep.checks.push_back(detail::check("single_sample_first_ratio", one.diag.ratio,
                                           0.875, one.diag.ratio == 0.875,
                                           "exact (n-1)/n at n = 8"));
      }

      // Plain gradient descent at 1/L drives grad^2 below 1e-12 quickly.
      cfg.scheduler = SchedulerSpec{};
      cfg.scheduler.name = SchedulerName::constant;
      cfg.scheduler.eta0 = 0.5;
      cfg.steps = 50;
      const RunRecord gd = run_trial(cfg, 1);
      double hit = -1.0;
      for (const StepRow& r : gd.rows)
        if (*r.grad_norm_sq_true < 1e-12) {
          hit = static_cast<double>(r.step);
          break;
        }
      rep.checks.push_back(detail::check("plain_descent_reaches_1e-12", hit, 50.0,
                                          hit > 0.0 && hit <= 50.0,
                                          "first step with grad^2 < 1e-12"));
      break;
    }
  }

  detail::finalize(rep);
  return rep;
}

inline std::vector<Claim> all_claims() {
  return {Claim::variance_gaussian, Claim::variance_bound, Claim::rate_inner_oracle,
          Claim::rate_expected_oracle, Claim::rate_estimated, Claim::sharded_gap,
          Claim::noiseless_fixed_point};
}

}  // namespace glyder
