#include <gtest/gtest.h>

#include <cmath>

#include "distsketch/errors.hpp"
#include "distsketch/plan.hpp"
#include "distsketch/tail_model.hpp"

namespace ds = distsketch;

namespace {

ds::EstimatorConfig gaussian_cfg(double eps, double sigma, double ell = 1.0) {
  ds::EstimatorConfig cfg;
  cfg.epsilon = eps;
  cfg.delta = 0.05;
  cfg.tail = ds::SubGaussian{sigma};
  cfg.lipschitz = ell;
  return cfg;
}

ds::EstimatorConfig weibull_cfg(double eps, double alpha, double c_alpha = 1.0) {
  ds::EstimatorConfig cfg;
  cfg.epsilon = eps;
  cfg.delta = 0.05;
  cfg.tail = ds::SubWeibull{alpha, c_alpha};
  cfg.lipschitz = 1.0;
  return cfg;
}

}  // namespace

TEST(EvenCounters, RoundsUpToEvenAtLeastFour) {
  EXPECT_EQ(ds::even_counters(0.3), 4u);
  EXPECT_EQ(ds::even_counters(4.0), 4u);
  EXPECT_EQ(ds::even_counters(4.1), 6u);
  EXPECT_EQ(ds::even_counters(27.73), 28u);
  EXPECT_EQ(ds::even_counters(29.0), 30u);
  EXPECT_THROW(ds::even_counters(std::nan("")), ds::ConfigError);
}

TEST(PlanWasserstein, GaussianExample) {
  // (5 / 0.25) ln(1 / 0.25) = 27.73 -> 28
  const auto plan = ds::plan_wasserstein(gaussian_cfg(0.25, 5.0));
  EXPECT_EQ(plan.counters, 28u);
  EXPECT_DOUBLE_EQ(plan.bucket_width, 0.0625);
}

TEST(PlanWasserstein, HalfEpsilonRule) {
  auto cfg = gaussian_cfg(0.25, 5.0);
  cfg.bucket_rule = ds::WassersteinBucketRule::kHalfEpsilon;
  EXPECT_DOUBLE_EQ(ds::plan_wasserstein(cfg).bucket_width, 0.125);
}

TEST(PlanWasserstein, WeibullExample) {
  // (1 / 0.25) ln 4 = 5.545 -> 6
  EXPECT_EQ(ds::plan_wasserstein(weibull_cfg(0.25, 1.0)).counters, 6u);
  // alpha = 2: 4 (ln 4)^2 = 7.69 -> 8
  EXPECT_EQ(ds::plan_wasserstein(weibull_cfg(0.25, 2.0)).counters, 8u);
}

TEST(PlanWasserstein, SampleThreshold) {
  // ln(20) * max(1/eps^2, 1/l^2, l^2) with eps = 0.25, l = 1.
  EXPECT_EQ(ds::plan_wasserstein(gaussian_cfg(0.25, 5.0)).n_min,
            static_cast<std::uint64_t>(std::ceil(std::log(20.0) * 16.0)));
}

TEST(PlanWasserstein, HalvingEpsilonIncreasesBudget) {
  for (const double sigma : {0.5, 1.0, 5.0}) {
    const auto a = ds::plan_wasserstein(gaussian_cfg(0.2, sigma));
    const auto b = ds::plan_wasserstein(gaussian_cfg(0.1, sigma));
    EXPECT_GT(b.counters, a.counters);
    EXPECT_GT(b.n_min, a.n_min);
  }
}

TEST(PlanWasserstein, ConstantScalesBudget) {
  auto cfg = gaussian_cfg(0.05, 5.0);
  const auto base = ds::plan_wasserstein(cfg);
  cfg.constant = 2.0;
  const auto doubled = ds::plan_wasserstein(cfg);
  EXPECT_GE(doubled.counters, 2 * base.counters - 2);
  EXPECT_GE(doubled.n_min, 2 * base.n_min - 1);
}

TEST(PlanWasserstein, UsesLargerSigmaOfTheTwoStreams) {
  auto cfg = gaussian_cfg(0.1, 1.0);
  cfg.tail_b = ds::SubGaussian{4.0};
  EXPECT_EQ(ds::plan_wasserstein(cfg).counters,
            ds::plan_wasserstein(gaussian_cfg(0.1, 4.0)).counters);
  cfg.tail_b = ds::SubWeibull{1.0, 1.0};
  EXPECT_THROW(ds::plan_wasserstein(cfg), ds::ConfigError);
}

TEST(PlanTv, GaussianBucketWidth) {
  EXPECT_DOUBLE_EQ(ds::plan_tv(gaussian_cfg(0.1, 1.0)).bucket_width,
                   0.1 / std::sqrt(std::log(20.0)));
}

TEST(PlanTv, WeibullBucketWidth) {
  EXPECT_DOUBLE_EQ(ds::plan_tv(weibull_cfg(0.1, 1.0, 1.0)).bucket_width, 0.1 / std::log(20.0));
}

TEST(PlanTv, GaussianCounters) {
  // (sigma^2 l / eps) ln(1/eps) = 25 / 0.05 * ln 20 = 1497.9 -> 1498
  EXPECT_EQ(ds::plan_tv(gaussian_cfg(0.05, 5.0)).counters, 1498u);
}

TEST(PlanTv, DoublingSigmaHalvesWidthAndDoublesWidthTimesCounters) {
  for (const double sigma : {1.0, 2.0, 3.0}) {
    const auto a = ds::plan_tv(gaussian_cfg(0.05, sigma));
    const auto b = ds::plan_tv(gaussian_cfg(0.05, 2.0 * sigma));
    EXPECT_DOUBLE_EQ(b.bucket_width, a.bucket_width / 2.0);
    const double ratio = (b.bucket_width * static_cast<double>(b.counters)) /
                         (a.bucket_width * static_cast<double>(a.counters));
    EXPECT_NEAR(ratio, 2.0, 0.02);
  }
}

TEST(PlanTv, Monotone) {
  for (const double eps : {0.02, 0.05, 0.1, 0.2}) {
    const auto tight = ds::plan_tv(gaussian_cfg(eps / 2, 2.0));
    const auto loose = ds::plan_tv(gaussian_cfg(eps, 2.0));
    EXPECT_GE(tight.counters, loose.counters);
    EXPECT_GE(tight.n_min, loose.n_min);
    EXPECT_LE(tight.bucket_width, loose.bucket_width);
    const auto wider = ds::plan_tv(gaussian_cfg(eps, 4.0));
    EXPECT_GE(wider.counters, loose.counters);
    EXPECT_GE(wider.n_min, loose.n_min);
    const auto steeper = ds::plan_tv(gaussian_cfg(eps, 2.0, 3.0));
    EXPECT_GE(steeper.counters, loose.counters);
    EXPECT_GE(steeper.n_min, loose.n_min);
  }
}

TEST(PlanTv, WeibullNeedsCAlphaAboveHalfEpsilon) {
  EXPECT_THROW(ds::plan_tv(weibull_cfg(0.1, 1.0, 0.04)), ds::ConfigError);
}

TEST(Config, Validation) {
  EXPECT_THROW(ds::plan_wasserstein(gaussian_cfg(0.0, 1.0)), ds::ConfigError);
  EXPECT_THROW(ds::plan_wasserstein(gaussian_cfg(1.0, 1.0)), ds::ConfigError);
  EXPECT_THROW(ds::plan_wasserstein(gaussian_cfg(0.1, -1.0)), ds::ConfigError);
  EXPECT_THROW(ds::plan_wasserstein(gaussian_cfg(0.1, 1.0, 0.0)), ds::ConfigError);
  auto cfg = gaussian_cfg(0.1, 1.0);
  cfg.delta = 1.0;
  EXPECT_THROW(ds::plan_tv(cfg), ds::ConfigError);
  cfg.delta = 0.05;
  cfg.constant = 0.0;
  EXPECT_THROW(ds::plan_tv(cfg), ds::ConfigError);
}

TEST(LearnerCounters, CdfGaussian) {
  // ceil(8 * 5 / 0.05 * sqrt(ln 80)) = 1675 -> 1676
  EXPECT_EQ(ds::counters_for_cdf(ds::SubGaussian{5.0}, 0.05, 0.05), 1676u);
}

TEST(LearnerCounters, PdfAndL1Gaussian) {
  const double pdf = 8.0 * 1.0 / 0.1 * std::sqrt(std::log(1.0 / 0.05));
  EXPECT_EQ(ds::counters_for_pdf(ds::SubGaussian{1.0}, 0.05, 0.1), ds::even_counters(std::ceil(pdf)));
  const double l1 = 8.0 * 1.0 / 0.1 * std::sqrt(std::log(6.0 / 0.05));
  EXPECT_EQ(ds::counters_for_l1(ds::SubGaussian{1.0}, 0.05, 0.1), ds::even_counters(std::ceil(l1)));
}

TEST(LearnerCounters, Weibull) {
  // c / (2b) (ln 4/eps)^alpha and c / b (ln 1/eps)^alpha
  EXPECT_EQ(ds::counters_for_cdf(ds::SubWeibull{1.0, 1.0}, 0.05, 0.1),
            ds::even_counters(std::ceil(std::log(80.0) / 0.2)));
  EXPECT_EQ(ds::counters_for_pdf(ds::SubWeibull{2.0, 1.0}, 0.05, 0.1),
            ds::even_counters(std::ceil(std::pow(std::log(20.0), 2.0) / 0.1)));
}

TEST(LearnerSamples, Formulas) {
  EXPECT_EQ(ds::samples_for_learner(ds::SubGaussian{1.0}, 0.1, 0.05),
            static_cast<std::uint64_t>(std::ceil(std::log(20.0))));
  EXPECT_EQ(ds::samples_for_learner(ds::SubWeibull{1.0, 1.0}, 0.1, 0.05),
            static_cast<std::uint64_t>(std::ceil(std::log(20.0) / 0.1)));
}

TEST(TailModel, ParseAndPrint) {
  EXPECT_EQ(ds::parse_tail_model("subgaussian:5"), ds::TailModel(ds::SubGaussian{5.0}));
  EXPECT_EQ(ds::parse_tail_model("subweibull:2"), ds::TailModel(ds::SubWeibull{2.0, 1.0}));
  EXPECT_EQ(ds::parse_tail_model("subweibull:0.5,3"), ds::TailModel(ds::SubWeibull{0.5, 3.0}));
  EXPECT_EQ(ds::parse_tail_model(ds::to_string(ds::SubWeibull{0.5, 3.0})),
            ds::TailModel(ds::SubWeibull{0.5, 3.0}));
  EXPECT_THROW(ds::parse_tail_model("gaussian:1"), ds::ConfigError);
  EXPECT_THROW(ds::parse_tail_model("subgaussian:-1"), ds::ConfigError);
  EXPECT_THROW(ds::parse_tail_model("subgaussian"), ds::ConfigError);
  EXPECT_THROW(ds::parse_tail_model("subweibull:1,2,3"), ds::ConfigError);
}
