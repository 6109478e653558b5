#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "distsketch/distances.hpp"
#include "distsketch/plan.hpp"
#include "distsketch/summary.hpp"

namespace distsketch {

/// One side of an estimate: the sample stream of every source, in stream order.
using SourceSpans = std::span<const std::span<const double>>;

/// Summarises every source independently (OpenMP across sources), then merges
/// the per-source summaries in source order.
DistributionSummary summarize_sources(SourceSpans sources, const BucketSpec& spec,
                                      std::size_t capacity);

/// Single-threaded reference for summarize_sources; produces identical state.
DistributionSummary summarize_sources_serial(SourceSpans sources, const BucketSpec& spec,
                                             std::size_t capacity);

struct EstimateReport {
  DistanceReport distance;
  EstimatePlan plan;
  std::uint64_t n_a = 0;
  std::uint64_t n_b = 0;
  /// Set when either side is shorter than plan.n_min; the value is still
  /// computed.
  bool below_threshold = false;
  DistributionSummary summary_a;
  DistributionSummary summary_b;
};

/// Sublinear Wasserstein-p estimate from per-source CDF summaries.
/// Throws DataError when a side has no samples.
EstimateReport swa(SourceSpans a, SourceSpans b, const EstimatePlan& plan, double p = 1.0);
EstimateReport swa(SourceSpans a, SourceSpans b, const EstimatorConfig& cfg, double p = 1.0);

/// Sublinear TV estimate from per-source PDF summaries.
EstimateReport stva(SourceSpans a, SourceSpans b, const EstimatePlan& plan);
EstimateReport stva(SourceSpans a, SourceSpans b, const EstimatorConfig& cfg);

}  // namespace distsketch
