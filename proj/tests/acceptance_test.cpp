// Acceptance suite: twelve statistical and exactness gates the library must
// clear, each printed as a single [Cnn] PASS/FAIL line with its measured
// values.  Tolerances are pinned here and nowhere else; loosening them is a
// behavior change, not a cleanup.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "glyder/estimators.hpp"
#include "glyder/harness/sweep.hpp"
#include "glyder/harness/verify.hpp"
#include "glyder/problems.hpp"
#include "glyder/rng.hpp"
#include "glyder/schedulers.hpp"
#include "glyder/smoothness.hpp"
#include "glyder/vec.hpp"

namespace {

using glyder::Claim;
using glyder::RngStream;
using glyder::Vec;
using glyder::VerdictReport;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void print_line(int idx, bool pass, const std::string& what, double secs) {
  std::printf("[C%02d] %s  %s  (%.1f s)\n", idx, pass ? "PASS" : "FAIL",
              what.c_str(), secs);
  std::fflush(stdout);
}

// verify() is deterministic, so claims shared between criteria run once.
const VerdictReport& cached_verify(Claim c) {
  static std::map<Claim, VerdictReport> cache;
  auto it = cache.find(c);
  if (it == cache.end()) it = cache.emplace(c, glyder::verify(c)).first;
  return it->second;
}

std::string check_summary(const VerdictReport& rep) {
  std::ostringstream os;
  int passed = 0;
  for (const auto& c : rep.checks) passed += c.pass;
  os << passed << "/" << rep.checks.size() << " checks";
  for (const auto& c : rep.checks)
    if (!c.pass)
      os << "; FAIL " << c.name << " measured " << c.measured << " target "
         << c.target;
  return os.str();
}

TEST(Acceptance, C01_EstimatorMeanUnbiasedUnderGaussianNoise) {
  Timer t;
  const VerdictReport& rep = cached_verify(Claim::variance_gaussian);
  const auto& c = rep.checks.at(0);
  std::ostringstream os;
  os << "pairwise estimator mean " << c.measured << " vs 1.0, " << c.detail
     << " (1e6 trials, n=8, d=10, sigma=1)";
  const double secs = t.seconds();
  print_line(1, c.pass, os.str(), secs);
  EXPECT_TRUE(c.pass);
  EXPECT_LT(secs, 30.0);
}

TEST(Acceptance, C02_EstimatorVarianceMatchesTheExactGaussianFormula) {
  Timer t;
  const VerdictReport& rep = cached_verify(Claim::variance_gaussian);
  const auto& c = rep.checks.at(1);
  std::ostringstream os;
  os << "Var(mu) " << c.measured << " vs closed form " << c.target
     << ", tolerance 5% relative";
  const double secs = t.seconds();
  print_line(2, c.pass, os.str(), secs);
  EXPECT_TRUE(c.pass);
  EXPECT_LT(secs, 30.0);
  EXPECT_DOUBLE_EQ(c.target, glyder::variance_gaussian(1.0, 1.0, 8, 10));
}

TEST(Acceptance, C03_SphereNoiseVarianceStaysWithinTheDistributionFreeBound) {
  Timer t;
  const VerdictReport& rep = cached_verify(Claim::variance_bound);
  const auto& c = rep.checks.at(0);
  std::ostringstream os;
  os << "max Var(mu) over 20 repetitions " << c.measured << " vs bound "
     << c.target << ", zero violations required";
  print_line(3, rep.pass, os.str(), t.seconds());
  EXPECT_TRUE(rep.pass);
  EXPECT_DOUBLE_EQ(c.target, glyder::variance_bound(1.0, 1.0, 8));
}

TEST(Acceptance, C04_LinearTimeIdentityMatchesTheQuadraticTimeSums) {
  Timer t;
  RngStream rng(0xC4);
  int failures = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.uniform_below(15);
    const std::size_t d = 1 + rng.uniform_below(64);
    // Signal with norm in [0.5, 2] keeps mu away from zero so the relative
    // comparison is meaningful.
    Vec center(d);
    rng.fill_normal(center);
    glyder::scale(center, (0.5 + 1.5 * rng.uniform01()) /
                              std::sqrt(glyder::norm_sq(center)));
    glyder::GradientBatch batch;
    for (std::size_t i = 0; i < n; ++i) {
      Vec g = rng.gaussian_noise(d, 0.8);
      glyder::add_inplace(g, center);
      batch.grads.push_back(std::move(g));
    }
    const glyder::NormEstimate fast =
        glyder::estimate(batch, glyder::EstimatorMode::normalized);
    const glyder::NormEstimate slow = glyder::pairwise_estimate_bruteforce(batch);
    const double mu_rel = std::abs(fast.mu - slow.mu) / std::max(std::abs(slow.mu), 1e-12);
    const double ga_rel = std::abs(fast.gamma - slow.gamma) / slow.gamma;
    worst = std::max({worst, mu_rel, ga_rel});
    failures += mu_rel >= 1e-10 || ga_rel >= 1e-10;
  }
  std::ostringstream os;
  os << "1000 random batches, worst relative disagreement " << worst
     << " vs 1e-10, " << failures << " exceptions";
  print_line(4, failures == 0, os.str(), t.seconds());
  EXPECT_EQ(failures, 0);
  EXPECT_LT(worst, 1e-10);
}

TEST(Acceptance, C05_InnerProductOracleMeetsItsRateBound) {
  Timer t;
  const VerdictReport& rep = cached_verify(Claim::rate_inner_oracle);
  const auto& c = rep.checks.at(0);
  std::ostringstream os;
  os << "seed-averaged min grad^2 " << c.measured << " vs 1.1x bound " << c.target
     << " (" << c.detail << ")";
  const double secs = t.seconds();
  print_line(5, rep.pass, os.str(), secs);
  EXPECT_TRUE(rep.pass);
  EXPECT_LT(secs, 60.0);
}

TEST(Acceptance, C06_ExpectedStepsizeOracleMeetsTheSameBound) {
  Timer t;
  const VerdictReport& rep = cached_verify(Claim::rate_expected_oracle);
  const auto& c = rep.checks.at(0);
  std::ostringstream os;
  os << "seed-averaged min grad^2 " << c.measured << " vs 1.1x bound " << c.target;
  const double secs = t.seconds();
  print_line(6, rep.pass, os.str(), secs);
  EXPECT_TRUE(rep.pass);
  EXPECT_LT(secs, 60.0);
}

TEST(Acceptance, C07_EstimatedStepsizeMeetsTheSqrtNDiscountedBoundWithoutTuning) {
  Timer t;
  const VerdictReport& rep = cached_verify(Claim::rate_estimated);
  const auto& c = rep.checks.at(0);
  std::ostringstream os;
  os << "two-sample rule at n=16, min grad^2 " << c.measured << " vs 1.25x bound "
     << c.target;
  print_line(7, rep.pass, os.str(), t.seconds());
  EXPECT_TRUE(rep.pass);
}

TEST(Acceptance, C08_NoiselessRunsCollapseToTheirClosedForms) {
  Timer t;
  const VerdictReport& rep = cached_verify(Claim::noiseless_fixed_point);
  print_line(8, rep.pass, "sigma=0 exactness: " + check_summary(rep), t.seconds());
  EXPECT_TRUE(rep.pass) << rep.to_text();
}

TEST(Acceptance, C09_CurvatureProbesHitAnalyticAndFiniteDifferenceTargets) {
  Timer t;

  // Analytic Hessian path: diagonal quadratics, 100 random spectra and
  // directions, 1e-12 relative.
  RngStream rng(0xC9);
  double worst_analytic = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng.uniform_below(10);
    Vec eig(d);
    for (double& e : eig) e = 0.05 + 3.0 * rng.uniform01();
    glyder::ProblemHandle p = glyder::make_noisy_quadratic(eig, 0.0, trial + 1);
    Vec x(d), dir(d);
    rng.fill_normal(x);
    rng.fill_normal(dir);
    const double probe = glyder::curvature_1d(
        p, x, dir, glyder::BatchSelector::full(),
        glyder::CurvatureMode::quadratic_form, 1e-12);
    double exact = 0.0;
    for (std::size_t i = 0; i < d; ++i) exact += eig[i] * dir[i] * dir[i];
    worst_analytic = std::max(worst_analytic, std::abs(probe - exact) / exact);
  }

  // Finite-difference fallback: the tanh network's probe against a loss
  // second difference, an oracle that never touches the gradient code.
  glyder::ProblemHandle mlp = glyder::make_mlp_classifier({2, 4, 3}, 30, 5, 5);
  double worst_fd = 0.0;
  int fd_checked = 0;
  for (int trial = 0; trial < 60 && fd_checked < 25; ++trial) {
    Vec x(mlp.dim()), dir(mlp.dim());
    rng.fill_normal(x);
    rng.fill_normal(dir);
    const double h = 1e-4 * (1.0 + std::sqrt(glyder::norm_sq(x))) /
                     std::sqrt(glyder::norm_sq(dir));
    Vec xp = x, xm = x;
    glyder::axpy(h, dir, xp);
    glyder::axpy(-h, dir, xm);
    const double second =
        (mlp.loss(xp) - 2.0 * mlp.loss(x) + mlp.loss(xm)) / (h * h);
    if (second < 0.05) continue;  // clamped or too flat for a relative check
    const double probe = glyder::curvature_1d(
        mlp, x, dir, glyder::BatchSelector::full(),
        glyder::CurvatureMode::quadratic_form, 1e-8);
    worst_fd = std::max(worst_fd, std::abs(probe - second) / second);
    ++fd_checked;
  }

  const double gnb = glyder::gnb_estimate({3.0, -4.0}, 1e-8);

  const bool pass = worst_analytic < 1e-12 && fd_checked >= 25 &&
                    worst_fd < 1e-4 && gnb == 16.0;
  std::ostringstream os;
  os << "analytic worst rel " << worst_analytic << " vs 1e-12; fd worst rel "
     << worst_fd << " vs 1e-4 over " << fd_checked
     << " probes; gnb(3,-4) = " << gnb;
  print_line(9, pass, os.str(), t.seconds());
  EXPECT_LT(worst_analytic, 1e-12);
  EXPECT_GE(fd_checked, 25);
  EXPECT_LT(worst_fd, 1e-4);
  EXPECT_EQ(gnb, 16.0);
}

TEST(Acceptance, C10_ShardedGradientsShowTheMeanEstimatorBias) {
  Timer t;
  const VerdictReport& rep = cached_verify(Claim::sharded_gap);
  print_line(10, rep.pass,
             "8 shards, 1000 repetitions: " + check_summary(rep), t.seconds());
  EXPECT_TRUE(rep.pass) << rep.to_text();
}

TEST(Acceptance, C11_PracticalSchedulerKeepsUpWithTheBestConstantOnTheMlp) {
  Timer t;

  glyder::RunConfig base;
  base.problem.kind = glyder::ProblemKind::mlp_classifier;  // {2,12,3}, 400 samples
  base.n = 8;
  base.steps = 300;
  base.seeds = {1, 2, 3, 4, 5};

  const glyder::SweepGrid grid{glyder::default_eta0_grid(), {}};

  glyder::RunConfig practical = base;
  practical.scheduler.name = glyder::SchedulerName::glyder_practical;
  practical.scheduler.smoothness = glyder::SmoothnessKind::proj_1d;
  const glyder::SweepResult pr =
      glyder::sweep(practical, grid, glyder::SelectionMetric::final_loss, 1);

  glyder::RunConfig constant = base;
  constant.scheduler.name = glyder::SchedulerName::constant;
  const glyder::SweepResult cr =
      glyder::sweep(constant, grid, glyder::SelectionMetric::final_loss, 1);

  const auto mean_final = [](const glyder::SweepResult& r) {
    double acc = 0.0;
    for (const auto& rec : r.winner_records) acc += rec.summary.final_loss;
    return acc / static_cast<double>(r.winner_records.size());
  };
  const double practical_loss = mean_final(pr);
  const double constant_loss = mean_final(cr);
  const bool pass = practical_loss <= 1.15 * constant_loss;

  std::ostringstream os;
  os << "adaptive final loss " << practical_loss << " (eta0 "
     << pr.winner_config.scheduler.eta0 << ") vs best constant " << constant_loss
     << " (eta0 " << cr.winner_config.scheduler.eta0
     << "), 5 seeds, allowed ratio 1.15";
  const double secs = t.seconds();
  print_line(11, pass, os.str(), secs);
  EXPECT_LE(practical_loss, 1.15 * constant_loss);
  EXPECT_LT(secs, 300.0);
}

TEST(Acceptance, C12_BaselineSchedulesHitTheirExactValues) {
  Timer t;
  bool pass = true;

  // rsqrt halves exactly when t reaches three times the squash constant.
  for (double eta0 : {0.3, 0.7, 1.0}) {
    const auto rsqrt = glyder::BaselineSchedule::rsqrt(eta0, 100.0);
    pass = pass && glyder::baseline_stepsize(rsqrt, 0) == eta0;
    pass = pass && glyder::baseline_stepsize(rsqrt, 300) == 0.5 * eta0;
  }
  const auto rsqrt = glyder::BaselineSchedule::rsqrt(1.0, 100.0);
  double prev = glyder::baseline_stepsize(rsqrt, 0);
  for (std::int64_t t_i = 1; t_i <= 1000; ++t_i) {
    const double cur = glyder::baseline_stepsize(rsqrt, t_i);
    pass = pass && cur <= prev;
    prev = cur;
  }

  const auto cosine = glyder::BaselineSchedule::cosine(0.4, 77);
  pass = pass && glyder::baseline_stepsize(cosine, 0) == 0.4;
  pass = pass && glyder::baseline_stepsize(cosine, 77) == 0.0;
  prev = glyder::baseline_stepsize(cosine, 0);
  for (std::int64_t t_i = 1; t_i <= 77; ++t_i) {
    const double cur = glyder::baseline_stepsize(cosine, t_i);
    pass = pass && cur <= prev;
    prev = cur;
  }

  print_line(12, pass,
             "rsqrt(eta0,100) at t=300 = eta0/2 exactly; cosine endpoints exact; "
             "both monotone",
             t.seconds());
  EXPECT_TRUE(pass);
  EXPECT_EQ(glyder::baseline_stepsize(glyder::BaselineSchedule::rsqrt(0.3, 100.0), 300),
            0.15);
}

}  // namespace
