#include "distsketch/audit.hpp"

#include <algorithm>
#include <cmath>

#include "distsketch/distances.hpp"
#include "distsketch/errors.hpp"
#include "distsketch/estimators.hpp"
#include "distsketch/streams.hpp"

namespace distsketch {
namespace {

EstimatePlan apply_overrides(EstimatePlan plan, const AuditOptions& options) {
  if (options.counters) plan.counters = *options.counters;
  if (options.bucket_width) plan.bucket_width = *options.bucket_width;
  if (options.sources == 0) throw ConfigError("number of sources must be positive");
  return plan;
}

DistributionSummary summarize(std::span<const double> samples, const EstimatePlan& plan,
                              std::size_t sources) {
  const auto parts = split_sources(samples, std::min(sources, samples.size()));
  return summarize_sources(parts, BucketSpec(plan.bucket_width), plan.counters);
}

}  // namespace

AuditReport audit_fairness(const std::map<std::string, std::vector<double>>& groups,
                           const EstimatorConfig& cfg, const AuditOptions& options) {
  if (groups.size() < 2) throw DataError("fairness audit needs at least two groups");
  AuditReport report;
  report.plan = apply_overrides(plan_wasserstein(cfg), options);

  std::vector<std::pair<std::string, DistributionSummary>> summaries;
  std::uint64_t smallest = UINT64_MAX;
  for (const auto& [name, samples] : groups) {
    if (samples.empty()) throw DataError("group '" + name + "' has no samples");
    report.group_counts[name] = samples.size();
    smallest = std::min<std::uint64_t>(smallest, samples.size());
    summaries.emplace_back(name, summarize(samples, report.plan, options.sources));
  }
  report.below_threshold = smallest < report.plan.n_min;
  report.sublinearity_ratio =
      static_cast<double>(report.plan.counters) / static_cast<double>(smallest);

  for (std::size_t i = 0; i < summaries.size(); ++i) {
    for (std::size_t j = i + 1; j < summaries.size(); ++j) {
      const double w1 = wasserstein_p(summaries[i].second, summaries[j].second, 1.0).value;
      report.pairs.push_back({summaries[i].first, summaries[j].first, w1});
      report.max_value = std::max(report.max_value, w1);
    }
  }
  return report;
}

AuditReport audit_privacy(std::span<const double> losses_in, std::span<const double> losses_out,
                          const EstimatorConfig& cfg, std::span<const double> alphas,
                          const AuditOptions& options) {
  if (losses_in.empty() || losses_out.empty()) {
    throw DataError("privacy audit needs non-empty IN and OUT loss streams");
  }
  for (const double alpha : alphas) {
    if (!std::isfinite(alpha) || alpha < 0.0) throw ConfigError("privacy alphas must be >= 0");
  }
  AuditReport report;
  report.plan = apply_overrides(plan_tv(cfg), options);
  report.group_counts["in"] = losses_in.size();
  report.group_counts["out"] = losses_out.size();
  const auto smallest = std::min(losses_in.size(), losses_out.size());
  report.below_threshold = smallest < report.plan.n_min;
  report.sublinearity_ratio =
      static_cast<double>(report.plan.counters) / static_cast<double>(smallest);

  const auto in = summarize(losses_in, report.plan, options.sources);
  const auto out = summarize(losses_out, report.plan, options.sources);
  const double distance = tv(in, out).value;
  report.tv = distance;
  report.pairs.push_back({"in", "out", distance});
  report.max_value = distance;

  for (const double alpha : alphas) {
    PrivacyPoint point;
    point.alpha = alpha;
    point.tau = std::exp(alpha);
    point.hockey_stick = hockey_stick(in, out, point.tau).value;
    point.hockey_stick_reverse = hockey_stick(out, in, point.tau).value;
    point.correction_band = (1.0 + point.tau) * cfg.epsilon;
    report.privacy.push_back(point);
  }
  return report;
}

}  // namespace distsketch
