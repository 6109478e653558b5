#include "distsketch/distances.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "distsketch/errors.hpp"

namespace distsketch {
namespace {

__extension__ using u128 = unsigned __int128;

/// Neumaier-compensated accumulator.
template <class Real>
class CompensatedSum {
 public:
  void add(Real x) {
    const Real t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + carry_; }

 private:
  Real sum_ = 0;
  Real carry_ = 0;
};

void require_p(double p) {
  if (!std::isfinite(p) || p < 1.0) throw ConfigError("metric order p must be finite and >= 1");
}

void require_same_spec(const DistributionSummary& a, const DistributionSummary& b) {
  if (!(a.spec() == b.spec())) {
    throw ConfigError("bucket-wise distances need identical bucket specs");
  }
  if (!a.has_mass() || !b.has_mass()) throw DataError("distance on a summary holding no mass");
}

/// Visits the union support of two counter maps as (count_a, count_b) pairs.
template <class Fn>
std::size_t for_each_union(const CounterSketch::Counters& a, const CounterSketch::Counters& b,
                           Fn&& fn) {
  auto ia = a.begin();
  auto ib = b.begin();
  std::size_t visited = 0;
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      fn(ia->second, CounterSketch::Count{0});
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      fn(CounterSketch::Count{0}, ib->second);
      ++ib;
    } else {
      fn(ia->second, ib->second);
      ++ia;
      ++ib;
    }
    ++visited;
  }
  return visited;
}

// pa(i) - pb(i) = (fa*Tb - fb*Ta) / (Ta*Tb). With totals below 2^62 every
// cross product and the sum of their magnitudes (<= 2*Ta*Tb) fit in 128 bits.
struct ExactL1 {
  u128 positive = 0;  // sum of max(fa*Tb - fb*Ta, 0)
  u128 absolute = 0;  // sum of |fa*Tb - fb*Ta|
  u128 denominator = 0;
  std::size_t visited = 0;
};

ExactL1 exact_l1(const DistributionSummary& a, const DistributionSummary& b) {
  constexpr CounterSketch::Count kLimit = CounterSketch::Count{1} << 62;
  const auto ta = a.sketch().total();
  const auto tb = b.sketch().total();
  if (ta >= kLimit || tb >= kLimit) {
    throw std::overflow_error("summary mass too large for exact distance arithmetic");
  }
  ExactL1 out;
  out.denominator = u128{ta} * tb;
  out.visited = for_each_union(a.sketch().counters(), b.sketch().counters(),
                               [&](CounterSketch::Count fa, CounterSketch::Count fb) {
                                 const u128 lhs = u128{fa} * tb;
                                 const u128 rhs = u128{fb} * ta;
                                 if (lhs >= rhs) {
                                   out.positive += lhs - rhs;
                                   out.absolute += lhs - rhs;
                                 } else {
                                   out.absolute += rhs - lhs;
                                 }
                               });
  return out;
}

double ratio(u128 num, u128 den) {
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

}  // namespace

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kWasserstein: return "wasserstein";
    case Metric::kTotalVariation: return "tv";
    case Metric::kLp: return "lp";
    case Metric::kHockeyStick: return "hockeystick";
  }
  return "unknown";
}

Metric parse_metric(std::string_view text) {
  if (text == "wasserstein") return Metric::kWasserstein;
  if (text == "tv") return Metric::kTotalVariation;
  if (text == "lp") return Metric::kLp;
  if (text == "hockeystick") return Metric::kHockeyStick;
  throw ConfigError("unknown metric '" + std::string(text) + "'");
}

StepQuantile StepQuantile::from_summary(const DistributionSummary& summary) {
  if (!summary.has_mass()) throw DataError("quantile function of a summary holding no mass");
  StepQuantile q;
  const auto total = static_cast<double>(summary.sketch().total());
  CounterSketch::Count running = 0;
  for (const auto& [index, count] : summary.sketch().counters()) {
    running += count;
    q.cumulative.push_back(static_cast<double>(running) / total);
    q.support.push_back(summary.spec().midpoint(index));
  }
  return q;
}

StepQuantile StepQuantile::from_bucketed(const BucketedEmpirical& bucketed) {
  if (bucketed.n() == 0) throw DataError("quantile function of an empty distribution");
  StepQuantile q;
  const auto total = static_cast<double>(bucketed.n());
  std::uint64_t running = 0;
  for (const auto& [index, count] : bucketed.counts()) {
    running += count;
    q.cumulative.push_back(static_cast<double>(running) / total);
    q.support.push_back(bucketed.spec().midpoint(index));
  }
  return q;
}

StepQuantile StepQuantile::from_samples(std::span<const double> samples) {
  if (samples.empty()) throw DataError("quantile function of an empty sample set");
  StepQuantile q;
  q.support.assign(samples.begin(), samples.end());
  std::sort(q.support.begin(), q.support.end());
  const auto n = static_cast<double>(samples.size());
  q.cumulative.reserve(samples.size());
  for (std::size_t i = 1; i <= samples.size(); ++i) {
    q.cumulative.push_back(static_cast<double>(i) / n);
  }
  return q;
}

double StepQuantile::operator()(double r) const {
  if (!(r > 0.0 && r <= 1.0)) throw ConfigError("quantile argument must lie in (0, 1]");
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), r);
  const auto j = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                       support.size() - 1);
  return support[j];
}

DistanceReport wasserstein_p(const StepQuantile& a, const StepQuantile& b, double p) {
  require_p(p);
  if (a.support.empty() || b.support.empty()) {
    throw DataError("wasserstein distance on an empty distribution");
  }
  CompensatedSum<double> integral;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t segments = 0;
  double previous = 0.0;
  while (i < a.cumulative.size() && j < b.cumulative.size()) {
    const double next = std::min(a.cumulative[i], b.cumulative[j]);
    const double length = next - previous;
    if (length > 0.0) {
      const double gap = std::fabs(a.support[i] - b.support[j]);
      integral.add((p == 1.0 ? gap : std::pow(gap, p)) * length);
      ++segments;
    }
    previous = next;
    if (a.cumulative[i] == next) ++i;
    if (b.cumulative[j] == next) ++j;
  }
  const double total = std::max(0.0, integral.value());
  return {Metric::kWasserstein, p == 1.0 ? total : std::pow(total, 1.0 / p), p, segments};
}

DistanceReport wasserstein_p(const DistributionSummary& a, const DistributionSummary& b,
                             double p) {
  require_p(p);
  return wasserstein_p(StepQuantile::from_summary(a), StepQuantile::from_summary(b), p);
}

DistanceReport tv(const DistributionSummary& a, const DistributionSummary& b) {
  require_same_spec(a, b);
  const auto l1 = exact_l1(a, b);
  // The signed differences sum to zero, so absolute == 2 * positive exactly.
  return {Metric::kTotalVariation, ratio(l1.absolute / 2, l1.denominator), std::nullopt,
          l1.visited};
}

DistanceReport lp_distance(const DistributionSummary& a, const DistributionSummary& b,
                           double p) {
  require_p(p);
  require_same_spec(a, b);
  if (p == 1.0) {
    const auto l1 = exact_l1(a, b);
    return {Metric::kLp, ratio(l1.absolute, l1.denominator), p, l1.visited};
  }
  const auto ta = static_cast<long double>(a.sketch().total());
  const auto tb = static_cast<long double>(b.sketch().total());
  CompensatedSum<long double> sum;
  const auto visited = for_each_union(
      a.sketch().counters(), b.sketch().counters(),
      [&](CounterSketch::Count fa, CounterSketch::Count fb) {
        const long double gap = std::fabs(static_cast<long double>(fa) / ta -
                                          static_cast<long double>(fb) / tb);
        sum.add(std::pow(gap, static_cast<long double>(p)));
      });
  const long double total = std::max<long double>(0.0L, sum.value());
  return {Metric::kLp, static_cast<double>(std::pow(total, 1.0L / p)), p, visited};
}

DistanceReport hockey_stick(const DistributionSummary& a, const DistributionSummary& b,
                            double tau) {
  if (!std::isfinite(tau) || tau < 1.0) throw ConfigError("hockey-stick tau must be >= 1");
  require_same_spec(a, b);
  if (tau == 1.0) {
    const auto l1 = exact_l1(a, b);
    return {Metric::kHockeyStick, ratio(l1.positive, l1.denominator), tau, l1.visited};
  }
  const auto ta = static_cast<long double>(a.sketch().total());
  const auto tb = static_cast<long double>(b.sketch().total());
  const auto t = static_cast<long double>(tau);
  CompensatedSum<long double> sum;
  const auto visited = for_each_union(
      a.sketch().counters(), b.sketch().counters(),
      [&](CounterSketch::Count fa, CounterSketch::Count fb) {
        const long double excess =
            static_cast<long double>(fa) / ta - t * static_cast<long double>(fb) / tb;
        if (excess > 0) sum.add(excess);
      });
  const double value = static_cast<double>(std::clamp<long double>(sum.value(), 0.0L, 1.0L));
  return {Metric::kHockeyStick, value, tau, visited};
}

double oracle_wasserstein1(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw DataError("oracle W1 needs two non-empty sample sets of equal size");
  }
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CompensatedSum<double> sum;
  for (std::size_t i = 0; i < a.size(); ++i) sum.add(std::fabs(a[i] - b[i]));
  return sum.value() / static_cast<double>(a.size());
}

double oracle_tv(const BucketedEmpirical& a, const BucketedEmpirical& b) {
  if (!(a.spec() == b.spec())) throw ConfigError("oracle TV needs identical bucket specs");
  if (a.n() == 0 || b.n() == 0) throw DataError("oracle TV on an empty distribution");
  std::set<BucketIndex> support;
  for (const auto& entry : a.counts()) support.insert(entry.first);
  for (const auto& entry : b.counts()) support.insert(entry.first);
  // |ca/na - cb/nb| = |ca*nb - cb*na| / (na*nb), accumulated exactly.
  u128 numerator = 0;
  for (const auto index : support) {
    const u128 lhs = u128{a.count(index)} * b.n();
    const u128 rhs = u128{b.count(index)} * a.n();
    numerator += lhs > rhs ? lhs - rhs : rhs - lhs;
  }
  const long double denominator = 2.0L * static_cast<long double>(a.n()) *
                                  static_cast<long double>(b.n());
  return static_cast<double>(static_cast<long double>(numerator) / denominator);
}

}  // namespace distsketch
