#include "distsketch/summary.hpp"

#include <cmath>

#include "distsketch/errors.hpp"

namespace distsketch {

DistributionSummary::DistributionSummary(BucketSpec spec, std::size_t capacity,
                                         std::optional<TailModel> tail)
    : DistributionSummary(spec, CounterSketch(capacity), std::move(tail)) {}

DistributionSummary::DistributionSummary(BucketSpec spec, CounterSketch sketch,
                                         std::optional<TailModel> tail)
    : spec_(spec), sketch_(std::move(sketch)) {
  set_tail(std::move(tail));
}

void DistributionSummary::set_tail(std::optional<TailModel> tail) {
  if (tail) validate(*tail);
  tail_ = std::move(tail);
}

void DistributionSummary::update(double x) { sketch_.update(spec_.bucket_of(x), 1); }

void DistributionSummary::update(std::span<const double> xs) {
  for (const double x : xs) update(x);
}

void DistributionSummary::merge(const DistributionSummary& other) {
  if (!(other.spec_ == spec_)) {
    throw ConfigError("summary merge: bucket specs differ");
  }
  sketch_.merge(other.sketch_);
  if (!tail_) tail_ = other.tail_;
}

void DistributionSummary::require_mass() const {
  if (sketch_.total() == 0) {
    throw DataError(n() == 0 ? "query on an empty summary"
                             : "summary retains no counters; feed more samples");
  }
}

double DistributionSummary::pdf(BucketIndex i) const {
  require_mass();
  return static_cast<double>(sketch_.estimate(i)) / static_cast<double>(sketch_.total());
}

double DistributionSummary::cdf(BucketIndex i) const {
  require_mass();
  return static_cast<double>(sketch_.estimate_cumulate(i)) /
         static_cast<double>(sketch_.total());
}

double DistributionSummary::pseudoinverse(double r) const {
  if (!(r > 0.0 && r <= 1.0)) {
    throw ConfigError("pseudoinverse argument must lie in (0, 1]");
  }
  require_mass();
  const auto total = static_cast<double>(sketch_.total());
  CounterSketch::Count cumulative = 0;
  for (const auto& [index, count] : sketch_.counters()) {
    cumulative += count;
    if (static_cast<double>(cumulative) / total >= r) return spec_.midpoint(index);
  }
  // Unreachable: the last retained bucket has estimated CDF exactly 1.
  return spec_.midpoint(sketch_.counters().rbegin()->first);
}

}  // namespace distsketch
