#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distsketch/plan.hpp"

namespace distsketch {

/// Overrides applied on top of the planned (b, k); sources splits every
/// stream into that many contiguous pieces before summarising.
struct AuditOptions {
  std::optional<std::size_t> counters;
  std::optional<double> bucket_width;
  std::size_t sources = 1;
};

struct PairwiseDistance {
  std::string first;
  std::string second;
  double value = 0.0;
};

struct PrivacyPoint {
  double alpha = 0.0;
  double tau = 1.0;                ///< e^alpha
  double hockey_stick = 0.0;       ///< H_tau(in || out)
  double hockey_stick_reverse = 0.0;  ///< H_tau(out || in)
  double correction_band = 0.0;    ///< (1 + e^alpha) * epsilon
};

struct AuditReport {
  std::vector<PairwiseDistance> pairs;
  double max_value = 0.0;
  EstimatePlan plan;
  std::map<std::string, std::uint64_t> group_counts;
  /// plan.counters divided by the smallest group size.
  double sublinearity_ratio = 0.0;
  bool below_threshold = false;
  /// Privacy audits only.
  std::optional<double> tv;
  std::vector<PrivacyPoint> privacy;
};

/// Demographic-parity audit: W1 estimate for every unordered group pair and
/// their maximum. Needs at least two non-empty groups (DataError otherwise).
AuditReport audit_fairness(const std::map<std::string, std::vector<double>>& groups,
                           const EstimatorConfig& cfg, const AuditOptions& options = {});

/// Privacy audit over IN/OUT loss samples: TV plus hockey-stick divergences at
/// tau = e^alpha for every alpha in the grid (alpha >= 0).
AuditReport audit_privacy(std::span<const double> losses_in, std::span<const double> losses_out,
                          const EstimatorConfig& cfg, std::span<const double> alphas,
                          const AuditOptions& options = {});

}  // namespace distsketch
