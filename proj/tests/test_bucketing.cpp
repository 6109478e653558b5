#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "distsketch/bucketing.hpp"
#include "distsketch/errors.hpp"
#include "distsketch/streams.hpp"

using distsketch::BucketedEmpirical;
using distsketch::BucketSpec;

TEST(BucketSpec, FloorFormula) {
  const BucketSpec spec(0.5);
  EXPECT_EQ(spec.bucket_of(0.75), 1);
  EXPECT_EQ(spec.bucket_of(-0.25), -1);
  EXPECT_EQ(spec.bucket_of(0.5), 1);
  EXPECT_EQ(spec.bucket_of(0.0), 0);
}

TEST(BucketSpec, OriginShiftsIndices) {
  const BucketSpec spec(1.0, 10.0);
  EXPECT_EQ(spec.bucket_of(10.0), 0);
  EXPECT_EQ(spec.bucket_of(9.999), -1);
  EXPECT_DOUBLE_EQ(spec.midpoint(0), 10.5);
}

TEST(BucketSpec, Midpoints) {
  const BucketSpec spec(0.5);
  EXPECT_DOUBLE_EQ(spec.midpoint(0), 0.25);
  EXPECT_DOUBLE_EQ(spec.midpoint(-1), -0.25);
}

TEST(BucketSpec, MidpointRoundTrip) {
  for (const double width : {0.5, 0.05, 0.1, 3.0}) {
    for (const double origin : {0.0, -1.3, 7.25}) {
      const BucketSpec spec(width, origin);
      for (distsketch::BucketIndex i = -1000; i <= 1000; ++i) {
        ASSERT_EQ(spec.bucket_of(spec.midpoint(i)), i) << width << ' ' << origin << ' ' << i;
      }
    }
  }
}

TEST(BucketSpec, RejectsBadInput) {
  EXPECT_THROW(BucketSpec(0.0), distsketch::ConfigError);
  EXPECT_THROW(BucketSpec(-1.0), distsketch::ConfigError);
  EXPECT_THROW(BucketSpec(std::numeric_limits<double>::infinity()), distsketch::ConfigError);
  EXPECT_THROW(BucketSpec(1.0, std::nan("")), distsketch::ConfigError);
  const BucketSpec spec(1.0);
  EXPECT_THROW(spec.bucket_of(std::nan("")), distsketch::DataError);
  EXPECT_THROW(spec.bucket_of(std::numeric_limits<double>::infinity()), distsketch::DataError);
  EXPECT_THROW(BucketSpec(1e-300).bucket_of(1.0), distsketch::DataError);
}

TEST(BucketizeExact, OneSamplePerBucket) {
  const std::vector<double> xs = {0.1, 0.6, 1.1, 1.6};
  const auto e = distsketch::bucketize_exact(xs, BucketSpec(0.5));
  EXPECT_EQ(e.counts(), (BucketedEmpirical::Counts{{0, 1}, {1, 1}, {2, 1}, {3, 1}}));
  EXPECT_DOUBLE_EQ(e.cdf(1), 0.5);
  EXPECT_DOUBLE_EQ(e.cdf(-5), 0.0);
  EXPECT_DOUBLE_EQ(e.cdf(3), 1.0);
}

TEST(BucketizeExact, SingleBucketHasUnitMass) {
  const std::vector<double> xs = {0.1, 0.2, 0.3};
  const auto e = distsketch::bucketize_exact(xs, BucketSpec(0.5));
  EXPECT_DOUBLE_EQ(e.pdf(0), 1.0);
  EXPECT_DOUBLE_EQ(e.pdf(1), 0.0);
}

TEST(BucketizeExact, EmptyInputRejectsQueries) {
  const auto e = distsketch::bucketize_exact({}, BucketSpec(0.5));
  EXPECT_EQ(e.n(), 0u);
  EXPECT_THROW(e.pdf(0), distsketch::DataError);
  EXPECT_THROW(e.cdf(0), distsketch::DataError);
}

TEST(BucketizeExact, CountsSumToN) {
  const auto xs = distsketch::generate({distsketch::GaussianSource{0.0, 1.0}, 5, 100000});
  const auto e = distsketch::bucketize_exact(xs, BucketSpec(0.05));
  std::uint64_t sum = 0;
  long double pdf_sum = 0.0L;
  for (const auto& [i, c] : e.counts()) {
    sum += c;
    pdf_sum += e.pdf(i);
  }
  EXPECT_EQ(sum, e.n());
  EXPECT_EQ(e.n(), xs.size());
  EXPECT_NEAR(static_cast<double>(pdf_sum), 1.0, 1e-12);
}

TEST(BucketizeExact, CdfMonotone) {
  const auto xs = distsketch::generate({distsketch::GaussianSource{2.0, 3.0}, 9, 5000});
  const auto e = distsketch::bucketize_exact(xs, BucketSpec(0.25));
  double prev = 0.0;
  for (distsketch::BucketIndex i = e.counts().begin()->first - 2;
       i <= e.counts().rbegin()->first + 2; ++i) {
    const double c = e.cdf(i);
    ASSERT_GE(c, prev);
    prev = c;
  }
  EXPECT_DOUBLE_EQ(prev, 1.0);
}

TEST(BucketizeExact, ParallelMatchesSerial) {
  const auto xs = distsketch::generate({distsketch::GaussianSource{0.0, 5.0}, 21, 200000});
  for (const double w : {0.01, 0.5, 4.0}) {
    const BucketSpec spec(w, -0.3);
    const auto par = distsketch::bucketize_exact(xs, spec);
    const auto ser = distsketch::bucketize_exact_serial(xs, spec);
    EXPECT_EQ(par.counts(), ser.counts());
    EXPECT_EQ(par.n(), ser.n());
  }
}

TEST(BucketizeExact, ParallelReportsBadSample) {
  std::vector<double> xs(1000, 1.0);
  xs[777] = std::nan("");
  EXPECT_THROW(distsketch::bucketize_exact(xs, BucketSpec(0.5)), distsketch::DataError);
}

TEST(BucketedEmpirical, DropsZeroCounts) {
  const BucketedEmpirical e(BucketSpec(1.0), {{0, 0}, {1, 2}, {3, 0}});
  EXPECT_EQ(e.counts().size(), 1u);
  EXPECT_EQ(e.n(), 2u);
}
