#include <map>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracle.hpp"
#include "prolong/combinatorics.hpp"
#include "prolong/counting.hpp"
#include "prolong/prolongation.hpp"
#include "prolong/witnesses.hpp"

using namespace prolong;
using testing_helpers::coeffs;

TEST(Matrix, DirectEqualsRecursive) {
  for (unsigned n = 2; n <= 6; ++n)
    for (unsigned d = 1; d <= 5; ++d) EXPECT_EQ(build_direct(n, d), build_recursive(n, d)) << n << "," << d;
}

TEST(Matrix, DimensionsAndCounts) {
  for (unsigned n = 1; n <= 6; ++n) {
    for (unsigned d = 0; d <= 5; ++d) {
      const auto J = build_direct(n, d);
      EXPECT_EQ(J.rows(), oracle::binom(n + d, d + 1));
      EXPECT_EQ(J.cols(), oracle::binom(n + d - 1, d));
      for (auto c : J.column_counts()) EXPECT_EQ(c, n);
      for (auto r : J.row_counts()) {
        EXPECT_GE(r, 1u);
        EXPECT_LE(r, n);
      }
      EXPECT_EQ(J.nnz(), J.cols() * n);
    }
  }
}

TEST(Matrix, RowAndColumnViewsAgree) {
  const auto J = build_direct(4, 3);
  std::size_t total = 0;
  for (std::size_t r = 0; r < J.rows(); ++r) {
    for (auto c : J.row(r)) {
      const auto col = J.column(c);
      EXPECT_TRUE(std::find(col.begin(), col.end(), r) != col.end());
      ++total;
    }
  }
  EXPECT_EQ(total, J.nnz());
}

TEST(Matrix, SmallExample) {
  // J_{2,1}: x1 -> x1^2 + x1x2, x2 -> x1x2 + x2^2.
  const auto J = build_direct(2, 1);
  const std::vector<MatrixEntry> expected{{0, 0}, {1, 0}, {1, 1}, {2, 1}};
  EXPECT_TRUE(std::equal(J.entries().begin(), J.entries().end(), expected.begin(), expected.end()));
}

TEST(Matrix, CachedMatchesDirect) {
  EXPECT_EQ(*prolong_matrix(3, 3), build_direct(3, 3));
  EXPECT_EQ(prolong_matrix(3, 3).get(), prolong_matrix(3, 3).get());
}

TEST(Apply, MatchesPolynomialExpansion) {
  std::mt19937_64 rng(3);
  for (unsigned n = 1; n <= 5; ++n) {
    for (unsigned d = 0; d <= 4; ++d) {
      for (int t = 0; t < 20; ++t) {
        const auto h = testing_helpers::random_vector(n, d, rng);
        const auto jh = apply(h);
        const auto expected = oracle::prolong(n, d, h.entries());
        EXPECT_EQ(jh.entries(), expected);
      }
    }
  }
}

TEST(Apply, Witnesses) {
  EXPECT_EQ(apply(witness_f()), coeffs(3, 3, {1, 0, 3, 0, 0, 3, 1, 0, 0, 1}));
  EXPECT_EQ(apply(witness_two_variables()), coeffs(2, 3, {1, 0, 0, 1}));
  EXPECT_EQ(rank_of(apply(witness_g()).view()), 8u);
}

TEST(Apply, RejectsWrongLength) {
  const auto J = build_direct(3, 2);
  EXPECT_THROW(apply(J, CoeffVector(3, 1)), std::invalid_argument);
  EXPECT_THROW(CoeffVector(3, 2, testing_helpers::rationals({1, 2})), std::invalid_argument);
}

TEST(Apply, Iterated) {
  // S^2 (x1^2 - x1x2 + x2^2) = (x1^3 + x2^3)(x1 + x2).
  EXPECT_EQ(iterated_apply(2, 2, 4, witness_two_variables()), coeffs(2, 4, {1, 1, 0, 1, 1}));
  EXPECT_EQ(iterated_apply(3, 2, 2, witness_f()), witness_f());
  EXPECT_THROW(iterated_apply(3, 2, 1, witness_f()), std::invalid_argument);
}

TEST(Decompose, WitnessF) {
  const auto g = decompose(witness_f());
  ASSERT_EQ(g.blocks.size(), 3u);
  EXPECT_EQ(g.blocks[0], coeffs(2, 0, {1}));
  EXPECT_EQ(g.blocks[1], coeffs(2, 1, {-1, 2}));
  EXPECT_EQ(g.blocks[2], coeffs(2, 2, {1, -1, 1}));
  EXPECT_EQ(g.slacks[0], coeffs(2, 0, {1}));
  EXPECT_EQ(g.slacks[1], coeffs(2, 1, {0, 3}));
  EXPECT_EQ(g.slacks[2], coeffs(2, 2, {0, 0, 3}));
  EXPECT_EQ(g.tail, coeffs(2, 3, {1, 0, 0, 1}));
  std::size_t slack_rank = 0;
  for (const auto& s : g.slacks) slack_rank += rank_of(s.view());
  EXPECT_EQ(slack_rank, 3u);
  EXPECT_EQ(rank_of(g.tail.view()), 2u);
  EXPECT_EQ(rank_of(apply(witness_f()).view()), slack_rank + rank_of(g.tail.view()));
}

TEST(Decompose, RequiresTwoVariables) { EXPECT_THROW(decompose(CoeffVector(1, 2)), std::invalid_argument); }

TEST(Decompose, BlockSizes) {
  for (unsigned n = 2; n <= 6; ++n) {
    for (unsigned d = 0; d <= 5; ++d) {
      const auto sizes = identity_block_sizes(n, d);
      ASSERT_EQ(sizes.size(), d + 1);
      std::size_t total = 0;
      for (unsigned j = 0; j <= d; ++j) {
        EXPECT_EQ(sizes[j], oracle::binom(n - 2 + j, j));
        total += sizes[j];
      }
      EXPECT_EQ(total, oracle::binom(n + d - 1, d));
      const auto g = decompose(CoeffVector(n, d));
      for (unsigned j = 0; j <= d; ++j) EXPECT_EQ(g.blocks[j].size(), sizes[j]);
    }
  }
}

TEST(Decompose, IdentitiesOnRandomVectors) {
  std::mt19937_64 rng(17);
  for (unsigned n = 2; n <= 5; ++n) {
    for (unsigned d = 1; d <= 4; ++d) {
      for (int t = 0; t < 200; ++t) {
        const auto h = testing_helpers::random_vector(n, d, rng);
        const auto g = decompose(h);
        EXPECT_EQ(g.reassemble(), h);
        const auto jh = apply(h);
        EXPECT_EQ(g.stacked(), jh.entries());
        std::size_t block_rank = 0;
        bool blocks_nonneg = true;
        for (const auto& s : g.slacks) {
          block_rank += rank_of(s.view());
          blocks_nonneg = blocks_nonneg && is_nonnegative(s.view());
        }
        block_rank += rank_of(g.tail.view());
        blocks_nonneg = blocks_nonneg && is_nonnegative(g.tail.view());
        EXPECT_EQ(block_rank, rank_of(jh.view()));
        EXPECT_EQ(blocks_nonneg, is_nonnegative(jh.view()));
        if (is_nonnegative(h.view())) EXPECT_TRUE(blocks_nonneg);
      }
    }
  }
}

TEST(Decompose, X1PowerEmbedding) {
  const auto lifted = multiply_by_x1_power(witness_f(), 2);
  EXPECT_EQ(lifted.d(), 4u);
  EXPECT_EQ(rank_of(apply(lifted).view()), 5u);
  EXPECT_EQ(profile(lifted.view()).positive, 4u);
  EXPECT_EQ(profile(lifted.view()).negative, 2u);
  EXPECT_TRUE(decompose(lifted).blocks[3].is_zero());
  EXPECT_TRUE(decompose(lifted).blocks[4].is_zero());
}

// The two-step composite J_{n,2} J_{n,1} is multiplication by S^2: every degree-3 monomial
// x^beta collects the multinomial weight 2 / prod(beta - alpha)! from each x^alpha below it.
TEST(Composite, TwoStepProductIsSquare) {
  for (unsigned n = 2; n <= 5; ++n) {
    const auto J1 = build_direct(n, 1);
    const auto J2 = build_direct(n, 2);
    std::map<std::pair<std::size_t, std::size_t>, long> product;
    for (std::size_t c = 0; c < J1.cols(); ++c)
      for (auto mid : J1.column(c))
        for (auto top : J2.column(mid)) ++product[{top, c}];
    const auto lower = lex_basis(n, 1);
    const auto upper = lex_basis(n, 3);
    for (std::size_t r = 0; r < upper.size(); ++r) {
      for (std::size_t c = 0; c < lower.size(); ++c) {
        long expected = 0;
        bool divides = true;
        unsigned excess_two = 0, excess_one = 0;
        for (unsigned k = 0; k < n; ++k) {
          if (upper[r][k] < lower[c][k]) divides = false;
          else if (upper[r][k] - lower[c][k] == 2) ++excess_two;
          else if (upper[r][k] - lower[c][k] == 1) ++excess_one;
        }
        if (divides) expected = excess_two == 1 ? 1 : (excess_one == 2 ? 2 : 0);
        const auto it = product.find({r, c});
        EXPECT_EQ(it == product.end() ? 0 : it->second, expected);
      }
    }
  }
}
