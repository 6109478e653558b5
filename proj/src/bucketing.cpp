#include "distsketch/bucketing.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <omp.h>

#include "distsketch/errors.hpp"

namespace distsketch {

BucketSpec::BucketSpec(double width, double origin) : width_(width), origin_(origin) {
  if (!std::isfinite(width) || width <= 0.0) {
    throw ConfigError("bucket width must be finite and positive, got " +
                      std::to_string(width));
  }
  if (!std::isfinite(origin)) throw ConfigError("bucket origin must be finite");
}

BucketIndex BucketSpec::bucket_of(double x) const {
  if (!std::isfinite(x)) throw DataError("cannot bucket a non-finite sample");
  // No snapping at boundaries: the floating-point floor is taken as-is.
  const double scaled = std::floor((x - origin_) / width_);
  constexpr double kLimit = 9.2e18;
  if (!(scaled > -kLimit && scaled < kLimit)) {
    throw DataError("sample " + std::to_string(x) + " is outside the indexable range");
  }
  return static_cast<BucketIndex>(scaled);
}

double BucketSpec::midpoint(BucketIndex i) const {
  return origin_ + static_cast<double>(i) * width_ + width_ / 2.0;
}

BucketedEmpirical::BucketedEmpirical(BucketSpec spec, Counts counts)
    : spec_(spec), counts_(std::move(counts)) {
  for (auto it = counts_.begin(); it != counts_.end();) {
    if (it->second == 0) {
      it = counts_.erase(it);
    } else {
      n_ += it->second;
      ++it;
    }
  }
}

std::uint64_t BucketedEmpirical::count(BucketIndex i) const {
  const auto it = counts_.find(i);
  return it == counts_.end() ? 0 : it->second;
}

double BucketedEmpirical::pdf(BucketIndex i) const {
  if (n_ == 0) throw DataError("pdf of an empty bucketed distribution");
  return static_cast<double>(count(i)) / static_cast<double>(n_);
}

double BucketedEmpirical::cdf(BucketIndex i) const {
  if (n_ == 0) throw DataError("cdf of an empty bucketed distribution");
  std::uint64_t below = 0;
  for (auto it = counts_.begin(); it != counts_.end() && it->first <= i; ++it) {
    below += it->second;
  }
  return static_cast<double>(below) / static_cast<double>(n_);
}

BucketedEmpirical bucketize_exact_serial(std::span<const double> samples,
                                         const BucketSpec& spec) {
  BucketedEmpirical::Counts counts;
  for (const double x : samples) ++counts[spec.bucket_of(x)];
  return BucketedEmpirical(spec, std::move(counts));
}

BucketedEmpirical bucketize_exact(std::span<const double> samples, const BucketSpec& spec) {
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  std::vector<BucketedEmpirical::Counts> partial(
      static_cast<std::size_t>(omp_get_max_threads()));
  bool failed = false;

#pragma omp parallel
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      // Exceptions must not cross the parallel region boundary.
      try {
        ++local[spec.bucket_of(samples[static_cast<std::size_t>(i)])];
      } catch (const DataError&) {
#pragma omp atomic write
        failed = true;
      }
    }
  }
  if (failed) {
    // Re-run serially to raise the same error the reference would.
    return bucketize_exact_serial(samples, spec);
  }

  BucketedEmpirical::Counts counts;
  for (auto& local : partial) {
    for (const auto& [index, count] : local) counts[index] += count;
  }
  return BucketedEmpirical(spec, std::move(counts));
}

}  // namespace distsketch
