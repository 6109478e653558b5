#pragma once

#include <cstdint>
#include <map>
#include <span>

namespace distsketch {

using BucketIndex = std::int64_t;

/// Partition of the real line into half-open buckets
/// [origin + i*width, origin + (i+1)*width), i in Z.
class BucketSpec {
 public:
  /// Throws ConfigError unless width is finite and > 0 and origin is finite.
  explicit BucketSpec(double width, double origin = 0.0);

  double width() const { return width_; }
  double origin() const { return origin_; }

  /// floor((x - origin) / width). Throws DataError for non-finite x or an
  /// index outside the signed 64-bit range.
  BucketIndex bucket_of(double x) const;

  /// origin + i*width + width/2, the support point of bucket i.
  double midpoint(BucketIndex i) const;

  friend bool operator==(const BucketSpec&, const BucketSpec&) = default;

 private:
  double width_;
  double origin_;
};

/// Exact histogram of a sample set over a BucketSpec. Used as ground truth
/// for the sketched summaries.
class BucketedEmpirical {
 public:
  using Counts = std::map<BucketIndex, std::uint64_t>;

  BucketedEmpirical(BucketSpec spec, Counts counts);

  const BucketSpec& spec() const { return spec_; }
  const Counts& counts() const { return counts_; }
  std::uint64_t n() const { return n_; }
  std::uint64_t count(BucketIndex i) const;

  // The queries below throw DataError when n() == 0.
  double pdf(BucketIndex i) const;
  double cdf(BucketIndex i) const;

 private:
  BucketSpec spec_;
  Counts counts_;
  std::uint64_t n_ = 0;
};

/// Exact bucket counts, parallelised over sample blocks with OpenMP.
BucketedEmpirical bucketize_exact(std::span<const double> samples, const BucketSpec& spec);

/// Single-threaded reference for bucketize_exact.
BucketedEmpirical bucketize_exact_serial(std::span<const double> samples,
                                         const BucketSpec& spec);

}  // namespace distsketch
