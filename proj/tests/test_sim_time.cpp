#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dynwarden/random.hpp"
#include "dynwarden/sim_time.hpp"

using namespace dynwarden;

TEST(SimTime, SecondsRoundTripToMicroseconds) {
  EXPECT_EQ(seconds(0.75).ticks(), 750'000);
  EXPECT_EQ(seconds(2.0) + seconds(0.05), SimTime::from_ticks(2'050'000));
  EXPECT_DOUBLE_EQ(seconds(1.25).seconds(), 1.25);
  EXPECT_EQ(format_seconds(seconds(3.5)), "3.500000");
}

TEST(SimTime, RejectsNonFinite) {
  EXPECT_THROW(SimTime::from_seconds(std::nan("")), std::invalid_argument);
  EXPECT_THROW(SimTime::from_seconds(std::numeric_limits<double>::infinity()),
               std::invalid_argument);
}

TEST(SimTime, InfinityDominates) {
  EXPECT_TRUE(SimTime::infinity().is_infinite());
  EXPECT_LT(seconds(1e6), SimTime::infinity());
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(Rng, BelowStaysInRange) {
  Rng r(3);
  for (int i = 0; i < 10'000; ++i) ASSERT_LT(r.below(7), 7u);
}

TEST(Rng, BetweenIsInclusive) {
  Rng r(5);
  bool lo = false, hi = false;
  for (int i = 0; i < 10'000; ++i) {
    const auto v = r.between(10, 20);
    ASSERT_GE(v, 10);
    ASSERT_LE(v, 20);
    lo |= v == 10;
    hi |= v == 20;
  }
  EXPECT_TRUE(lo && hi);
}

TEST(Rng, SampleWithoutReplacementIsDistinct) {
  Rng r(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = r.sample_without_replacement(50, 20);
    ASSERT_EQ(s.size(), 20u);
    std::sort(s.begin(), s.end());
    EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    EXPECT_LT(s.back(), 50u);
  }
}

TEST(Seeds, StreamsAreIndependent) {
  EXPECT_NE(stream_seed(1, Stream::kWarden), stream_seed(1, Stream::kSender));
  EXPECT_NE(stream_seed(1, Stream::kSender), stream_seed(1, Stream::kLink));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
  EXPECT_EQ(fnv1a("abc"), fnv1a("abc"));
  EXPECT_NE(fnv1a("abc"), fnv1a("abd"));
}
