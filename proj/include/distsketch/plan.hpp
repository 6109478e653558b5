#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "distsketch/tail_model.hpp"

namespace distsketch {

/// Bucket width used by the Wasserstein estimator: eps/4 (the estimator's
/// default) or eps/2 (the width its accuracy analysis assumes).
enum class WassersteinBucketRule { kQuarterEpsilon, kHalfEpsilon };

struct EstimatorConfig {
  double epsilon = 0.1;  ///< target accuracy, in (0, 1)
  double delta = 0.05;   ///< failure probability, in (0, 1)
  TailModel tail = SubGaussian{1.0};
  /// Bi-Lipschitz CDF constant (Wasserstein) or PDF Lipschitz constant (TV).
  double lipschitz = 1.0;
  /// Optional second-side declarations; the worse of the two is planned for.
  std::optional<TailModel> tail_b;
  std::optional<double> lipschitz_b;
  /// Multiplier for the unspecified constant in every threshold.
  double constant = 1.0;
  WassersteinBucketRule bucket_rule = WassersteinBucketRule::kQuarterEpsilon;

  /// Throws ConfigError on any out-of-range field.
  void validate() const;
  TailModel effective_tail() const;
  double effective_lipschitz() const;
};

struct EstimatePlan {
  double bucket_width = 0.0;
  std::size_t counters = 4;  ///< even, >= 4
  std::uint64_t n_min = 1;
};

/// Smallest even integer >= max(4, ceil(raw)).
std::size_t even_counters(double raw);

EstimatePlan plan_wasserstein(const EstimatorConfig& cfg);
EstimatePlan plan_tv(const EstimatorConfig& cfg);

// Counter budgets of the individual learners at a given bucket width, all
// scaled by `constant` and rounded through even_counters().

/// Pointwise PDF learner: 8 sigma/b sqrt(log(1/eps)); c/b log(1/eps)^alpha.
std::size_t counters_for_pdf(const TailModel& tail, double epsilon, double bucket_width,
                             double constant = 1.0);
/// Sup-norm CDF learner: 8 sigma/b sqrt(log(4/eps)); c/(2b) log(4/eps)^alpha.
std::size_t counters_for_cdf(const TailModel& tail, double epsilon, double bucket_width,
                             double constant = 1.0);
/// l1 PDF learner: 8 sigma/b sqrt(log(6/eps)); c/b log(6/eps)^alpha.
std::size_t counters_for_l1(const TailModel& tail, double epsilon, double bucket_width,
                            double constant = 1.0);

/// Stream length the pointwise / sup-norm / l1 learners need:
/// c log(1/delta) (sub-Gaussian) or c/eps log(1/delta) (sub-Weibull).
std::uint64_t samples_for_learner(const TailModel& tail, double epsilon, double delta,
                                  double constant = 1.0);

}  // namespace distsketch
