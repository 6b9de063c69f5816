#include "glyder/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "glyder/stats.hpp"
#include "glyder/vec.hpp"

namespace {

using glyder::RngStream;
using glyder::RunningMoments;

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  RngStream c(42), d(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(c.normal(), d.normal());
}

TEST(RngStream, DifferentSeedsDiffer) {
  RngStream a(1), b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.next_u64() == b.next_u64();
  EXPECT_EQ(same, 0);
}

TEST(RngStream, SplitIsIndependentOfParentAdvance) {
  RngStream parent(7);
  const RngStream child_before = parent.split(3);
  parent.next_u64();
  const RngStream child_after = parent.split(3);
  // split depends only on the key, not on how far the parent has advanced.
  EXPECT_EQ(child_before.key(), child_after.key());

  RngStream c0 = parent.split(0), c1 = parent.split(1);
  EXPECT_NE(c0.key(), c1.key());
  EXPECT_NE(c0.next_u64(), c1.next_u64());
}

TEST(RngStream, DeriveMixesBothLabels) {
  EXPECT_NE(RngStream::derive(1, 2).key(), RngStream::derive(2, 1).key());
  EXPECT_NE(RngStream::derive(1, 2).key(), RngStream::derive(1, 3).key());
  EXPECT_EQ(RngStream::derive(5, 9).key(), RngStream::derive(5, 9).key());
}

TEST(RngStream, Uniform01InOpenInterval) {
  RngStream r(11);
  RunningMoments m;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    m.push(u);
  }
  EXPECT_NEAR(m.mean(), 0.5, 5.0 * m.std_error());
  EXPECT_NEAR(m.variance(), 1.0 / 12.0, 0.01);
}

TEST(RngStream, UniformBelowIsRoughlyUniform) {
  RngStream r(13);
  constexpr std::uint64_t kBuckets = 8;
  constexpr int kDraws = 80000;
  std::vector<int> hits(kBuckets, 0);
  for (int i = 0; i < kDraws; ++i) {
    const std::uint64_t v = r.uniform_below(kBuckets);
    ASSERT_LT(v, kBuckets);
    ++hits[v];
  }
  for (std::uint64_t b = 0; b < kBuckets; ++b)
    EXPECT_NEAR(hits[b], kDraws / kBuckets, 0.05 * kDraws / kBuckets) << "bucket " << b;
}

TEST(RngStream, NormalMoments) {
  RngStream r(17);
  RunningMoments m;
  for (int i = 0; i < 200000; ++i) m.push(r.normal());
  EXPECT_NEAR(m.mean(), 0.0, 5.0 * m.std_error());
  EXPECT_NEAR(m.variance(), 1.0, 0.02);
}

TEST(RngStream, GaussianNoiseSecondMoment) {
  RngStream r(19);
  const double sigma = 1.7;
  RunningMoments m;
  for (int i = 0; i < 20000; ++i)
    m.push(glyder::norm_sq(r.gaussian_noise(10, sigma)));
  EXPECT_NEAR(m.mean(), sigma * sigma, 5.0 * m.std_error());
}

TEST(RngStream, GaussianNoiseZeroSigmaIsExactZero) {
  RngStream r(23);
  const glyder::Vec xi = r.gaussian_noise(5, 0.0);
  for (double v : xi) EXPECT_EQ(v, 0.0);
}

TEST(RngStream, SphereNoiseHasExactRadius) {
  RngStream r(29);
  const double sigma = 2.5;
  for (int i = 0; i < 200; ++i) {
    const double n = std::sqrt(glyder::norm_sq(r.sphere_noise(6, sigma)));
    EXPECT_NEAR(n, sigma, 1e-12);
  }
}

TEST(RngStream, SphereNoiseIsZeroMean) {
  RngStream r(31);
  const std::size_t d = 4;
  std::vector<RunningMoments> per_coord(d);
  for (int i = 0; i < 20000; ++i) {
    const glyder::Vec xi = r.sphere_noise(d, 1.0);
    for (std::size_t j = 0; j < d; ++j) per_coord[j].push(xi[j]);
  }
  for (std::size_t j = 0; j < d; ++j)
    EXPECT_NEAR(per_coord[j].mean(), 0.0, 4.0 * per_coord[j].std_error());
}

TEST(RunningMoments, MatchesDirectFormulas) {
  const std::vector<double> xs = {1.0, 4.0, -2.0, 7.5, 0.25};
  RunningMoments m;
  double s = 0.0;
  for (double x : xs) {
    m.push(x);
    s += x;
  }
  const double mean = s / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  EXPECT_NEAR(m.mean(), mean, 1e-12);
  EXPECT_NEAR(m.variance(), ss / static_cast<double>(xs.size() - 1), 1e-12);
  EXPECT_EQ(m.count(), 5);
}

TEST(RunningMoments, ThrowsWithoutSamples) {
  RunningMoments m;
  EXPECT_THROW(m.mean(), std::logic_error);
  m.push(1.0);
  EXPECT_THROW(m.variance(), std::logic_error);
}

}  // namespace
