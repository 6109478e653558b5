#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "distsketch/errors.hpp"
#include "distsketch/mmg.hpp"

using distsketch::CounterSketch;
using Count = CounterSketch::Count;
using Item = CounterSketch::Item;

namespace {

constexpr Item a = 1, b = 2, c = 3, d = 4, e = 5;

Count residual(const std::map<Item, Count>& f, std::size_t t) {
  std::vector<Count> v;
  Count total = 0;
  for (const auto& [item, count] : f) {
    v.push_back(count);
    total += count;
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  for (std::size_t i = 0; i < std::min(t, v.size()); ++i) total -= v[i];
  return total;
}

}  // namespace

TEST(CounterSketch, FreshSketchIsEmpty) {
  CounterSketch s(8);
  EXPECT_EQ(s.size(), 0u);
  EXPECT_EQ(s.decrement_rank(), 4u);
  EXPECT_EQ(s.estimate(42), 0u);
  EXPECT_EQ(s.processed_weight(), 0u);
}

TEST(CounterSketch, RejectsBadCapacity) {
  EXPECT_THROW(CounterSketch(3), distsketch::ConfigError);
  EXPECT_THROW(CounterSketch(2), distsketch::ConfigError);
  EXPECT_THROW(CounterSketch(7), distsketch::ConfigError);
  EXPECT_NO_THROW(CounterSketch(4));
}

TEST(CounterSketch, FourDistinctItemsFitWithoutDecrement) {
  CounterSketch s(4);
  for (Item i = 0; i < 4; ++i) s.update(i);
  EXPECT_EQ(s.size(), 4u);
  for (Item i = 0; i < 4; ++i) EXPECT_EQ(s.estimate(i), 1u);
}

TEST(CounterSketch, ExactRegimeCounts) {
  CounterSketch s(4);
  s.update(a);
  s.update(a);
  s.update(b);
  EXPECT_EQ(s.estimate(a), 2u);
  EXPECT_EQ(s.estimate(b), 1u);
  EXPECT_EQ(s.estimate(c), 0u);
}

TEST(CounterSketch, HandSimulatedDecrement) {
  // Counters {a:3, b:2, c:1, d:1}; the 2nd largest value is 2, so every
  // counter drops by 2 and only a survives. e (weight 1 < 2) is not admitted.
  CounterSketch s(4);
  for (Item x : {a, a, a, b, b, c, d}) s.update(x);
  s.update(e);
  EXPECT_EQ(s.counters(), (CounterSketch::Counters{{a, 1}}));
  EXPECT_EQ(s.estimate(a), 1u);
  EXPECT_EQ(s.estimate(e), 0u);
  EXPECT_EQ(s.processed_weight(), 8u);
  EXPECT_EQ(s.total(), 1u);
}

TEST(CounterSketch, HeavyArrivalAdmittedWithRemainder) {
  CounterSketch s(4);
  for (Item x : {a, a, a, b, b, c, d}) s.update(x);
  s.update(e, 5);  // threshold 2, so e enters with 3
  EXPECT_EQ(s.counters(), (CounterSketch::Counters{{a, 1}, {e, 3}}));
}

TEST(CounterSketch, ArrivalEqualToThresholdIsDropped) {
  CounterSketch s(4);
  for (Item x : {a, a, a, b, b, c, d}) s.update(x);
  s.update(e, 2);
  EXPECT_EQ(s.estimate(e), 0u);
}

TEST(CounterSketch, ZeroWeightRejected) {
  CounterSketch s(4);
  EXPECT_THROW(s.update(a, 0), distsketch::DataError);
}

TEST(CounterSketch, OverflowDetected) {
  CounterSketch s(4);
  s.update(a, std::numeric_limits<Count>::max());
  EXPECT_THROW(s.update(b), std::overflow_error);
}

TEST(CounterSketch, CumulateInExactRegime) {
  CounterSketch s(4);
  for (Item i : {1, 2, 3}) s.update(i);
  EXPECT_EQ(s.estimate_cumulate(2), 2u);
  EXPECT_EQ(s.estimate_cumulate(0), 0u);
  EXPECT_EQ(s.estimate_cumulate(99), 3u);
}

TEST(CounterSketch, MergeWithEmptyIsIdentity) {
  CounterSketch s(8);
  for (Item i : {1, 1, 2, 5, -3}) s.update(i);
  const auto before = s;
  s.merge(CounterSketch(8));
  EXPECT_EQ(s, before);
}

TEST(CounterSketch, MergeExactRegimeIsConcatenation) {
  CounterSketch x(8), y(8), whole(8);
  for (Item i : {1, 1, 2}) {
    x.update(i);
    whole.update(i);
  }
  for (Item i : {2, 3, -4, -4}) {
    y.update(i);
    whole.update(i);
  }
  x.merge(y);
  EXPECT_EQ(x, whole);
}

TEST(CounterSketch, MergeRejectsCapacityMismatch) {
  CounterSketch x(8);
  EXPECT_THROW(x.merge(CounterSketch(16)), distsketch::ConfigError);
}

TEST(CounterSketch, SelfMergeDoublesCounts) {
  CounterSketch s(8);
  s.update(1, 3);
  s.update(2, 1);
  s.merge(s);
  EXPECT_EQ(s.estimate(1), 6u);
  EXPECT_EQ(s.estimate(2), 2u);
  EXPECT_EQ(s.processed_weight(), 8u);
}

TEST(CounterSketch, FromStateValidates) {
  EXPECT_NO_THROW(CounterSketch::from_state(4, {{1, 2}, {2, 3}}, 10));
  EXPECT_THROW(CounterSketch::from_state(4, {{1, 0}}, 10), distsketch::ConfigError);
  EXPECT_THROW(CounterSketch::from_state(4, {{1, 11}}, 10), distsketch::ConfigError);
  EXPECT_THROW(CounterSketch::from_state(4, {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}}, 10),
               distsketch::ConfigError);
}

TEST(CounterSketch, SizeNeverExceedsCapacity) {
  std::mt19937_64 rng(3);
  CounterSketch s(16);
  for (int i = 0; i < 20000; ++i) {
    s.update(static_cast<Item>(rng() % 500), 1 + rng() % 16);
    ASSERT_LE(s.size(), 16u);
  }
}

// Randomised bound check against exhaustive counting, with total mass
// bookkeeping checked along the way.
TEST(CounterSketch, PointAndCumulantBoundsOnRandomStreams) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = std::size_t{4} << (trial % 5);
    const Item universe = 1 + static_cast<Item>(rng() % 300);
    CounterSketch s(k);
    std::map<Item, Count> f;
    const int n = 1 + static_cast<int>(rng() % 3000);
    for (int i = 0; i < n; ++i) {
      const Item item = static_cast<Item>(rng() % universe) - universe / 3;
      const Count w = 1 + rng() % 16;
      s.update(item, w);
      f[item] += w;
    }
    Count sum = 0;
    for (const auto& entry : s.counters()) sum += entry.second;
    ASSERT_EQ(sum, s.total());
    const Count res = residual(f, k / 4);
    Count truth = 0;
    for (const auto& [item, count] : f) {
      const Count est = s.estimate(item);
      ASSERT_LE(est, count);
      ASSERT_LE((count - est) * k, 4 * res);
      truth += count;
      const Count cum = s.estimate_cumulate(item);
      ASSERT_LE(cum, truth);
      ASSERT_LE(truth - cum, 2 * res);
    }
  }
}
