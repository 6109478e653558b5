#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "distsketch/bucketing.hpp"
#include "distsketch/mmg.hpp"
#include "distsketch/tail_model.hpp"

namespace distsketch {

/**
 * Sublinear summary of a sample stream: samples are mapped to buckets and the
 * bucket indices are fed to a CounterSketch with unit weight.
 *
 * The same state answers both PDF and CDF queries. Both normalise by the sum
 * of the retained counters (not by n), so the estimated PDF sums to one and
 * the estimated CDF reaches exactly one at the largest retained bucket.
 */
class DistributionSummary {
 public:
  DistributionSummary(BucketSpec spec, std::size_t capacity,
                      std::optional<TailModel> tail = std::nullopt);
  DistributionSummary(BucketSpec spec, CounterSketch sketch,
                      std::optional<TailModel> tail = std::nullopt);

  /// Throws DataError for non-finite samples.
  void update(double x);
  void update(std::span<const double> xs);

  /// Throws ConfigError unless both sides share BucketSpec and capacity.
  void merge(const DistributionSummary& other);

  // Estimate queries throw DataError while the summary holds no mass.
  double pdf(BucketIndex i) const;
  double cdf(BucketIndex i) const;

  /// Midpoint of the smallest retained bucket whose estimated CDF is >= r.
  /// Throws ConfigError unless 0 < r <= 1.
  double pseudoinverse(double r) const;

  std::uint64_t n() const { return sketch_.processed_weight(); }
  std::size_t assigned_buckets() const { return sketch_.size(); }
  std::size_t capacity() const { return sketch_.capacity(); }
  bool has_mass() const { return sketch_.total() > 0; }

  const BucketSpec& spec() const { return spec_; }
  const CounterSketch& sketch() const { return sketch_; }
  const std::optional<TailModel>& tail() const { return tail_; }
  void set_tail(std::optional<TailModel> tail);

  friend bool operator==(const DistributionSummary&, const DistributionSummary&) = default;

 private:
  void require_mass() const;

  BucketSpec spec_;
  CounterSketch sketch_;
  std::optional<TailModel> tail_;
};

}  // namespace distsketch
