#pragma once

// Independent reference implementations used only by tests. None of them calls the
// library's indexing, matrix, LP or search code.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Exps = std::vector<unsigned>;
using Q = mpq_class;

/// Plain 64-bit binomial (small arguments only).
std::uint64_t binom(unsigned a, unsigned b);

/// All degree-d exponent vectors in n variables, largest exponent vector first
/// (lexicographic descending), by brute-force enumeration and sort.
std::vector<Exps> monomials(unsigned n, unsigned d);

/// Coefficients of A(x) * (w_1 x_1 + ... + w_n x_n), A given by coefficients over monomials(n, d),
/// result over monomials(n, d + 1). Computed by expanding products of exponent vectors.
std::vector<Q> multiply_linear(unsigned n, unsigned d, const std::vector<Q>& coeffs, const std::vector<int>& weights);

/// Same with all weights 1.
std::vector<Q> prolong(unsigned n, unsigned d, const std::vector<Q>& coeffs);

/// Minimum number of nonzero entries of J h over h not >= 0 with J h >= 0, by enumerating
/// the extreme rays of the cone {h : J h >= 0}. nullopt when no such h exists.
std::optional<std::size_t> min_rank_extreme_rays(unsigned n, unsigned d);

/// Feasibility of { a_i . x >= b_i } u { c_j . x = e_j } by Fourier-Motzkin elimination.
struct Row {
  std::vector<Q> a;
  Q b;
  bool equality = false;
};
bool fm_feasible(std::size_t vars, const std::vector<Row>& rows);

/// Greedy Macaulay representation using 64-bit binomials: (top, bottom) pairs.
std::vector<std::pair<std::uint64_t, unsigned>> macaulay_greedy(std::uint64_t value, unsigned degree);

}  // namespace oracle
