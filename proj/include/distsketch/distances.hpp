#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distsketch/bucketing.hpp"
#include "distsketch/summary.hpp"

namespace distsketch {

enum class Metric { kWasserstein, kTotalVariation, kLp, kHockeyStick };

std::string_view to_string(Metric metric);
/// Accepts "wasserstein", "tv", "lp", "hockeystick".
Metric parse_metric(std::string_view text);

struct DistanceReport {
  Metric metric = Metric::kWasserstein;
  double value = 0.0;
  /// p for Wasserstein / lp, tau for hockey-stick.
  std::optional<double> parameter;
  /// Number of integration segments or support points visited.
  std::size_t breakpoints = 0;
};

/**
 * Right-continuous step quantile function: on (cumulative[j-1], cumulative[j]]
 * it takes value support[j], with cumulative[-1] = 0 and cumulative.back() = 1.
 */
struct StepQuantile {
  std::vector<double> cumulative;
  std::vector<double> support;

  static StepQuantile from_summary(const DistributionSummary& summary);
  static StepQuantile from_bucketed(const BucketedEmpirical& bucketed);
  /// Each sample carries mass 1/n.
  static StepQuantile from_samples(std::span<const double> samples);

  double operator()(double r) const;
};

/// (integral over (0,1] of |Qa^-1(r) - Qb^-1(r)|^p dr)^(1/p), integrated
/// exactly over the merged breakpoints. Throws ConfigError for p < 1.
DistanceReport wasserstein_p(const StepQuantile& a, const StepQuantile& b, double p);
DistanceReport wasserstein_p(const DistributionSummary& a, const DistributionSummary& b,
                             double p);

// The bucket-wise metrics below need identical BucketSpecs (ConfigError
// otherwise) and summaries holding mass (DataError otherwise).

/// 0.5 * sum over the union support of |pa(i) - pb(i)|.
DistanceReport tv(const DistributionSummary& a, const DistributionSummary& b);

/// (sum over the union support of |pa(i) - pb(i)|^p)^(1/p); p = 1 is 2 * tv.
DistanceReport lp_distance(const DistributionSummary& a, const DistributionSummary& b,
                           double p);

/// sum over the union support of max(pa(i) - tau * pb(i), 0); tau >= 1.
/// At tau = 1 this is the total variation distance, bit for bit.
DistanceReport hockey_stick(const DistributionSummary& a, const DistributionSummary& b,
                            double tau);

/// Exact empirical W1 between equal-size sample sets via sorted pairing.
double oracle_wasserstein1(std::span<const double> xs, std::span<const double> ys);

/// Exact TV between two bucketed empirical distributions.
double oracle_tv(const BucketedEmpirical& a, const BucketedEmpirical& b);

}  // namespace distsketch
