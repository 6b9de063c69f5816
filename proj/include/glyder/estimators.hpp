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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "glyder/rng.hpp"
#include "glyder/stats.hpp"
#include "glyder/vec.hpp"

namespace glyder {

// A set of n stochastic gradients taken at the same point.  The estimators
// below need at least two members to separate signal from noise.
struct GradientBatch {
  std::vector<Vec> grads;

  std::size_t n() const { return grads.size(); }
  std::size_t dim() const { return grads.empty() ? 0 : grads.front().size(); }

  void validate() const {
    if (grads.size() < 2)
      throw std::invalid_argument("GradientBatch: need at least 2 gradients");
    for (const Vec& g : grads)
      if (g.size() != grads.front().size())
        throw std::invalid_argument("GradientBatch: mismatched dimensions");
  }
};

// Two scalings of the same pair of statistics.
//
//   normalized: mu    = (1/(n(n-1))) sum_{i != j} <g_i, g_j>
//               gamma = |mean g|^2
//     mu is an unbiased estimate of the squared true-gradient norm under
//     zero-mean i.i.d. noise, and gamma estimates that norm plus the noise
//     second moment divided by n.
//
//   raw:        mu    = |sum g|^2 - sum |g_i|^2
//               gamma = |sum g|^2
//     Same quantities up to positive factors; the ratio mu/gamma converges to
//     (n-1)/n in the noiseless limit instead of 1.
enum class EstimatorMode { normalized, raw };

struct NormEstimate {
  double mu = 0.0;
  double gamma = 0.0;
  // mu/gamma clipped for use as a stepsize multiplier: 0 whenever gamma == 0
  // or mu <= 0 (a non-positive mu means noise dominates and the safe move is
  // to not move).  Never clipped from above.
  double ratio = 0.0;
  EstimatorMode mode = EstimatorMode::normalized;
};

inline double clipped_ratio(double mu, double gamma) {
  if (gamma == 0.0 || mu <= 0.0) return 0.0;
  return mu / gamma;
}

// O(n d) evaluation using the identities
//   sum_{i != j} <g_i,g_j> = |sum g|^2 - sum |g_i|^2
//   sum_{i,j}   <g_i,g_j> = |sum g|^2
inline NormEstimate estimate(const GradientBatch& batch, EstimatorMode mode) {
  batch.validate();
  const double n = static_cast<double>(batch.n());
  const Vec total = sum(batch.grads);
  const double sum_sq = norm_sq(total);
  double self_sq = 0.0;
  for (const Vec& g : batch.grads) self_sq += norm_sq(g);

  NormEstimate est;
  est.mode = mode;
  if (mode == EstimatorMode::normalized) {
    est.mu = (sum_sq - self_sq) / (n * (n - 1.0));
    est.gamma = sum_sq / (n * n);
  } else {
    est.mu = sum_sq - self_sq;
    est.gamma = sum_sq;
  }
  est.ratio = clipped_ratio(est.mu, est.gamma);
  return est;
}

// Reference implementation summing all ordered pairs explicitly in O(n^2 d).
// Kept deliberately independent of estimate() so the two can cross-check.
inline NormEstimate pairwise_estimate_bruteforce(const GradientBatch& batch) {
  batch.validate();
  const std::size_t n = batch.n();
  double off_diag = 0.0;
  double all_pairs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dot(batch.grads[i], batch.grads[j]);
      all_pairs += d;
      if (i != j) off_diag += d;
    }
  }
  const double nd = static_cast<double>(n);
  NormEstimate est;
  est.mode = EstimatorMode::normalized;
  est.mu = off_diag / (nd * (nd - 1.0));
  est.gamma = all_pairs / (nd * nd);
  est.ratio = clipped_ratio(est.mu, est.gamma);
  return est;
}

// Distribution-free upper bound on Var(mu) for noise with E|xi|^2 = sigma^2:
//   4 |grad|^2 sigma^2 / n + sigma^4 / (n (n-1)).
inline double variance_bound(double norm_sq_grad, double sigma_sq, int n) {
  if (n < 2) throw std::invalid_argument("variance_bound: n must be >= 2");
  if (norm_sq_grad < 0.0 || sigma_sq < 0.0)
    throw std::invalid_argument("variance_bound: negative moment");
  const double nd = static_cast<double>(n);
  return 4.0 * norm_sq_grad * sigma_sq / nd + sigma_sq * sigma_sq / (nd * (nd - 1.0));
}

// Exact Var(mu) when the noise is Gaussian with covariance (sigma^2/d) I_d;
// equal to variance_bound / d for every argument combination.
inline double variance_gaussian(double norm_sq_grad, double sigma_sq, int n, int d) {
  if (d < 1) throw std::invalid_argument("variance_gaussian: d must be >= 1");
  return variance_bound(norm_sq_grad, sigma_sq, n) / static_cast<double>(d);
}

struct MonteCarloMoments {
  double mean = 0.0;
  double variance = 0.0;
  std::int64_t trials = 0;
};

// Samples mu over `trials` independent batches of n noisy gradients around a
// fixed gradient of squared norm norm_sq_grad, and returns the empirical mean
// and unbiased variance.  The true gradient is placed along the first axis;
// by symmetry of both noise models this loses no generality.
inline MonteCarloMoments monte_carlo_moments(double norm_sq_grad, double sigma_sq,
                                             int n, int d, std::int64_t trials,
                                             std::uint64_t seed,
                                             NoiseModel noise = NoiseModel::gaussian) {
  if (trials < 1000)
    throw std::invalid_argument("monte_carlo_moments: need at least 1000 trials");
  if (n < 2 || d < 1)
    throw std::invalid_argument("monte_carlo_moments: bad n or d");
  if (norm_sq_grad < 0.0 || sigma_sq < 0.0)
    throw std::invalid_argument("monte_carlo_moments: negative moment");

  const double grad_first = std::sqrt(norm_sq_grad);
  const double sigma = std::sqrt(sigma_sq);
  RngStream rng(seed);
  RunningMoments acc;
  Vec total(static_cast<std::size_t>(d));
  Vec xi(static_cast<std::size_t>(d));
  const double nd = static_cast<double>(n);

  for (std::int64_t t = 0; t < trials; ++t) {
    std::fill(total.begin(), total.end(), 0.0);
    double self_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      xi = (noise == NoiseModel::gaussian) ? rng.gaussian_noise(xi.size(), sigma)
                                           : rng.sphere_noise(xi.size(), sigma);
      xi[0] += grad_first;
      add_inplace(total, xi);
      self_sq += norm_sq(xi);
    }
    const double mu = (norm_sq(total) - self_sq) / (nd * (nd - 1.0));
    acc.push(mu);
  }

  MonteCarloMoments out;
  out.mean = acc.mean();
  out.variance = acc.variance();
  out.trials = acc.count();
  return out;
}

}  // namespace glyder
