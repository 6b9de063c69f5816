#include "glyder/estimators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "glyder/rng.hpp"
#include "glyder/stats.hpp"
#include "glyder/vec.hpp"

namespace {

using glyder::EstimatorMode;
using glyder::GradientBatch;
using glyder::NormEstimate;
using glyder::RngStream;

// Draws a batch of n noisy gradients around a shared mean vector.
GradientBatch random_batch(RngStream& r, std::size_t n, std::size_t d,
                           double mean_scale, double noise_scale) {
  glyder::Vec center(d);
  r.fill_normal(center);
  glyder::scale(center, mean_scale);
  GradientBatch b;
  b.grads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    glyder::Vec g(d);
    r.fill_normal(g);
    glyder::scale(g, noise_scale);
    glyder::add_inplace(g, center);
    b.grads.push_back(std::move(g));
  }
  return b;
}

TEST(Estimate, HandWorkedTwoSampleCase) {
  GradientBatch b;
  b.grads = {{1.0, 1.0}, {3.0, -1.0}};
  const NormEstimate norm = glyder::estimate(b, EstimatorMode::normalized);
  EXPECT_EQ(norm.mu, 2.0);
  EXPECT_EQ(norm.gamma, 4.0);
  EXPECT_EQ(norm.ratio, 0.5);

  // Raw mode keeps the unnormalized sums: mu = |sum|^2 - sum|g|^2, gamma = |sum|^2.
  const NormEstimate raw = glyder::estimate(b, EstimatorMode::raw);
  EXPECT_EQ(raw.mu, 4.0);
  EXPECT_EQ(raw.gamma, 16.0);
  EXPECT_EQ(raw.ratio, 0.25);
}

TEST(Estimate, IdenticalGradientsGiveExactRatios) {
  for (std::size_t n : {2ul, 4ul, 8ul}) {
    GradientBatch b;
    b.grads.assign(n, {1.0, 2.0});
    const NormEstimate norm = glyder::estimate(b, EstimatorMode::normalized);
    EXPECT_EQ(norm.ratio, 1.0) << "n=" << n;
    const NormEstimate raw = glyder::estimate(b, EstimatorMode::raw);
    EXPECT_EQ(raw.ratio, (static_cast<double>(n) - 1.0) / static_cast<double>(n))
        << "n=" << n;
  }
}

TEST(Estimate, OrthogonalPairClipsToZero) {
  GradientBatch b;
  b.grads = {{2.0, 0.0}, {0.0, 3.0}};
  const NormEstimate e = glyder::estimate(b, EstimatorMode::normalized);
  EXPECT_EQ(e.mu, 0.0);
  EXPECT_EQ(e.ratio, 0.0);
}

TEST(Estimate, NegativeMuIsPreservedButRatioClips) {
  GradientBatch b;
  b.grads = {{1.0, 0.0}, {-2.0, 0.0}};
  const NormEstimate e = glyder::estimate(b, EstimatorMode::normalized);
  EXPECT_EQ(e.mu, -2.0);
  EXPECT_EQ(e.gamma, 0.25);
  EXPECT_EQ(e.ratio, 0.0);
}

TEST(Estimate, ZeroGammaClipsEvenThoughMuIsZero) {
  GradientBatch b;
  b.grads = {{1.0, 0.0}, {-1.0, 0.0}};
  const NormEstimate e = glyder::estimate(b, EstimatorMode::normalized);
  EXPECT_EQ(e.gamma, 0.0);
  EXPECT_EQ(e.ratio, 0.0);
}

TEST(ClippedRatio, NeverExceedsOneSidedBounds) {
  EXPECT_EQ(glyder::clipped_ratio(-1.0, 2.0), 0.0);
  EXPECT_EQ(glyder::clipped_ratio(0.0, 2.0), 0.0);
  EXPECT_EQ(glyder::clipped_ratio(1.0, 0.0), 0.0);
  // Ratios above one pass through untouched; clipping is one sided.
  EXPECT_EQ(glyder::clipped_ratio(3.0, 2.0), 1.5);
}

TEST(Estimate, MatchesPairwiseBruteforce) {
  RngStream r(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + r.uniform_below(15);
    const std::size_t d = 1 + r.uniform_below(64);
    const GradientBatch b = random_batch(r, n, d, 1.0, 0.7);
    const NormEstimate fast = glyder::estimate(b, EstimatorMode::normalized);
    const NormEstimate slow = glyder::pairwise_estimate_bruteforce(b);
    const double mu_scale = std::max(std::abs(slow.mu), 1e-6);
    EXPECT_NEAR(fast.mu, slow.mu, 1e-12 * mu_scale) << "trial " << trial;
    EXPECT_NEAR(fast.gamma, slow.gamma, 1e-12 * slow.gamma) << "trial " << trial;
  }
}

TEST(Estimate, RawMuBoundedByScaledGamma) {
  // Cauchy-Schwarz gives mu <= (n-1)/n * gamma for the raw sums.
  RngStream r(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + r.uniform_below(10);
    const GradientBatch b = random_batch(r, n, 8, 0.8, 1.2);
    const NormEstimate e = glyder::estimate(b, EstimatorMode::raw);
    const double bound = (static_cast<double>(n) - 1.0) / static_cast<double>(n) * e.gamma;
    EXPECT_LE(e.mu, bound + 1e-9 * std::abs(bound) + 1e-12);
  }
}

TEST(GradientBatch, ValidatesShape) {
  GradientBatch one;
  one.grads = {{1.0, 2.0}};
  EXPECT_THROW(glyder::estimate(one, EstimatorMode::normalized), std::invalid_argument);

  GradientBatch ragged;
  ragged.grads = {{1.0, 2.0}, {1.0}};
  EXPECT_THROW(glyder::estimate(ragged, EstimatorMode::normalized), std::invalid_argument);
}

TEST(VarianceFormulas, FrozenValues) {
  // bound(1,1,8) = 4/8 + 1/56; the Gaussian value divides by dimension.
  EXPECT_DOUBLE_EQ(glyder::variance_bound(1.0, 1.0, 8), 0.5 + 1.0 / 56.0);
  EXPECT_DOUBLE_EQ(glyder::variance_gaussian(1.0, 1.0, 8, 10), (0.5 + 1.0 / 56.0) / 10.0);
}

TEST(VarianceFormulas, GaussianIsBoundOverDimension) {
  RngStream r(5);
  for (int trial = 0; trial < 50; ++trial) {
    const double ns = 3.0 * r.uniform01();
    const double ss = 2.0 * r.uniform01();
    const std::size_t n = 2 + r.uniform_below(12);
    const std::size_t d = 1 + r.uniform_below(30);
    EXPECT_DOUBLE_EQ(glyder::variance_gaussian(ns, ss, n, d),
                     glyder::variance_bound(ns, ss, n) / static_cast<double>(d));
  }
}

TEST(VarianceFormulas, RejectsBadArguments) {
  EXPECT_THROW(glyder::variance_bound(1.0, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(glyder::variance_bound(-1.0, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(glyder::variance_bound(1.0, -1.0, 4), std::invalid_argument);
  EXPECT_THROW(glyder::variance_gaussian(1.0, 1.0, 4, 0), std::invalid_argument);
}

TEST(MonteCarlo, NoiselessEstimatorIsExact) {
  // 4.0 has an exact square root, so the internal gradient sqrt(ns) * e1
  // reproduces the requested squared norm bit for bit.
  const glyder::MonteCarloMoments m =
      glyder::monte_carlo_moments(4.0, 0.0, 4, 6, 1000, 9, glyder::NoiseModel::gaussian);
  EXPECT_EQ(m.mean, 4.0);
  EXPECT_EQ(m.variance, 0.0);
}

TEST(MonteCarlo, GaussianMomentsMatchClosedForm) {
  const double ns = 1.0, ss = 1.0;
  const std::size_t n = 8, d = 10;
  const std::size_t trials = 200000;
  const glyder::MonteCarloMoments m =
      glyder::monte_carlo_moments(ns, ss, n, d, trials, 123, glyder::NoiseModel::gaussian);
  const double exact_var = glyder::variance_gaussian(ns, ss, n, d);
  const double se = std::sqrt(m.variance / static_cast<double>(trials));
  EXPECT_NEAR(m.mean, ns, 5.0 * se);
  EXPECT_NEAR(m.variance, exact_var, 0.05 * exact_var);
}

TEST(MonteCarlo, SphereMeanIsUnbiasedAndVarianceWithinBound) {
  const double ns = 1.5, ss = 0.8;
  const std::size_t n = 6, d = 12;
  const std::size_t trials = 100000;
  const glyder::MonteCarloMoments m =
      glyder::monte_carlo_moments(ns, ss, n, d, trials, 321, glyder::NoiseModel::sphere);
  const double se = std::sqrt(m.variance / static_cast<double>(trials));
  EXPECT_NEAR(m.mean, ns, 5.0 * se);
  EXPECT_LE(m.variance, glyder::variance_bound(ns, ss, n));
}

TEST(MonteCarlo, RejectsTooFewTrials) {
  EXPECT_THROW(
      glyder::monte_carlo_moments(1.0, 1.0, 4, 5, 999, 1, glyder::NoiseModel::gaussian),
      std::invalid_argument);
}

TEST(MonteCarlo, GapBetweenNaiveAndUnbiasedIsNoiseOverN) {
  // E[gamma] - E[mu] should equal sigma^2 / n.
  RngStream r(888);
  const std::size_t n = 8, d = 10;
  const double sigma = 1.0;
  glyder::Vec grad(d, 0.0);
  grad[0] = 1.0;
  glyder::RunningMoments gap;
  for (int trial = 0; trial < 20000; ++trial) {
    GradientBatch b;
    b.grads.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      glyder::Vec g = r.gaussian_noise(d, sigma);
      glyder::add_inplace(g, grad);
      b.grads.push_back(std::move(g));
    }
    const NormEstimate e = glyder::estimate(b, EstimatorMode::normalized);
    gap.push(e.gamma - e.mu);
  }
  EXPECT_NEAR(gap.mean(), sigma * sigma / static_cast<double>(n), 4.0 * gap.std_error());
}

}  // namespace
