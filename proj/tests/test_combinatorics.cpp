#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "prolong/combinatorics.hpp"

using namespace prolong;

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(7, 3), 35);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(0, 0), 1);
}

TEST(Binomial, NoOverflow) {
  EXPECT_EQ(binomial(100, 50).get_str(), "100891344545564193334812497256");
  EXPECT_THROW(binomial_size(200, 100), std::overflow_error);
  EXPECT_EQ(binomial_size(10, 3), 120u);
}

TEST(Binomial, MatchesPascal) {
  for (unsigned a = 1; a < 40; ++a)
    for (unsigned b = 1; b <= a; ++b) EXPECT_EQ(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b));
}

TEST(Macaulay, Examples) {
  const auto rep = macaulay_rep(5, 2);
  ASSERT_EQ(rep.terms.size(), 2u);
  EXPECT_EQ(rep.terms[0].top, 3);
  EXPECT_EQ(rep.terms[0].bottom, 2u);
  EXPECT_EQ(rep.terms[1].top, 2);
  EXPECT_EQ(rep.terms[1].bottom, 1u);
  EXPECT_TRUE(macaulay_rep(0, 3).terms.empty());
  EXPECT_EQ(macaulay_step(5, 2), 7);
  EXPECT_EQ(macaulay_step(0, 4), 0);
  EXPECT_EQ(macaulay_step(4, 1), 10);
}

TEST(Macaulay, DimensionIdentityIsARepresentation) {
  // C(n+d-1, d) - 1 = C(n-1,1) + ... + C(n+d-2, d) for n = 3, d = 2: 5 = C(3,2) + C(2,1).
  for (unsigned n = 2; n <= 6; ++n) {
    for (unsigned d = 1; d <= 5; ++d) {
      const BigInt total = binomial(n + d - 1, d) - 1;
      const auto rep = macaulay_rep(total, d);
      ASSERT_EQ(rep.terms.size(), d);
      for (unsigned i = 0; i < d; ++i) {
        EXPECT_EQ(rep.terms[i].bottom, d - i);
        EXPECT_EQ(rep.terms[i].top, n + d - 2 - i);
      }
    }
  }
}

namespace {

void expect_matches_oracle(std::uint64_t value, unsigned d) {
  const auto rep = macaulay_rep(BigInt(static_cast<unsigned long>(value)), d);
  ASSERT_TRUE(rep.well_formed());
  ASSERT_EQ(rep.sum(), BigInt(static_cast<unsigned long>(value)));
  const auto expected = oracle::macaulay_greedy(value, d);
  ASSERT_EQ(rep.terms.size(), expected.size()) << value << " " << d;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(rep.terms[i].top, BigInt(static_cast<unsigned long>(expected[i].first)));
    EXPECT_EQ(rep.terms[i].bottom, expected[i].second);
    if (i > 0) {
      EXPECT_LT(rep.terms[i].top, rep.terms[i - 1].top);
      EXPECT_EQ(rep.terms[i].bottom + 1, rep.terms[i - 1].bottom);
    }
    EXPECT_GE(rep.terms[i].top, rep.terms[i].bottom);
  }
}

}  // namespace

TEST(Macaulay, RoundTripExhaustiveSmall) {
  for (unsigned d = 1; d <= 10; ++d)
    for (std::uint64_t v = 0; v <= 3000; ++v) expect_matches_oracle(v, d);
}

TEST(Macaulay, RoundTripSampledUpToMillion) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> value(0, 1'000'000);
  std::uniform_int_distribution<unsigned> degree(1, 10);
  for (int t = 0; t < 20'000; ++t) expect_matches_oracle(value(rng), degree(rng));
  for (unsigned d = 1; d <= 10; ++d) expect_matches_oracle(1'000'000, d);
}

TEST(Macaulay, StepIsMonotone) {
  for (unsigned d = 1; d <= 6; ++d) {
    BigInt prev = macaulay_step(0, d);
    for (unsigned long v = 1; v <= 2000; ++v) {
      const BigInt cur = macaulay_step(v, d);
      EXPECT_LE(prev, cur);
      prev = cur;
    }
  }
}

TEST(Kappa, Examples) {
  EXPECT_EQ(kappa0(2), 1u);
  EXPECT_EQ(kappa0(6), 2u);
  EXPECT_EQ(kappa0(7), 3u);
  EXPECT_THROW(kappa0(1), std::invalid_argument);
}

TEST(Kappa, BracketsTriangularNumbers) {
  for (unsigned n = 2; n <= 10'000; ++n) {
    const std::uint64_t k = kappa0(n);
    EXPECT_LT(k * (k + 1) / 2, n);
    EXPECT_GE((k + 1) * (k + 2) / 2, n);
  }
}

TEST(Bands, Examples) {
  const auto six = conjecture_bands(6);
  EXPECT_EQ(six.threshold, 14u);
  ASSERT_EQ(six.bands.size(), 3u);
  EXPECT_EQ(six.bands[0].low, 0u);
  EXPECT_EQ(six.bands[0].high, 0u);
  EXPECT_EQ(six.bands[1].low, 6u);
  EXPECT_EQ(six.bands[1].high, 6u);
  EXPECT_EQ(six.bands[2].low, 11u);
  EXPECT_EQ(six.bands[2].high, 12u);
  EXPECT_EQ(six.threshold, 3u * 6 - 4);

  const auto two = conjecture_bands(2);
  EXPECT_EQ(two.threshold, 2u);
  ASSERT_EQ(two.bands.size(), 2u);
  EXPECT_EQ(two.bands[1].low, 2u);
  EXPECT_EQ(two.bands[1].high, 2u);
}

TEST(Bands, Classification) {
  const auto six = conjecture_bands(6);
  EXPECT_EQ(classify_rank(six, 0).kind, BandClass::zero);
  EXPECT_EQ(classify_rank(six, 6).kind, BandClass::in_band);
  EXPECT_EQ(classify_rank(six, 6).kappa, 1u);
  EXPECT_EQ(classify_rank(six, 8).kind, BandClass::in_gap);
  EXPECT_EQ(classify_rank(six, 12).kappa, 2u);
  EXPECT_EQ(classify_rank(six, 13).kind, BandClass::in_gap);
  EXPECT_EQ(classify_rank(six, 14).kind, BandClass::above_threshold);
  EXPECT_EQ(to_string(BandClass::in_gap), "in-gap");
}
