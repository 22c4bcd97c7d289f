#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "prolong/monomials.hpp"
#include "prolong/rational.hpp"

namespace prolong {

/// Coefficient vector of a diagonal degree-d form in n variables, indexed by lex_basis(n, d).
class CoeffVector {
 public:
  CoeffVector() = default;
  /// Zero vector.
  CoeffVector(unsigned n, unsigned d);
  /// Throws std::invalid_argument if the length does not match basis_size(n, d).
  CoeffVector(unsigned n, unsigned d, RationalVector entries);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  std::size_t size() const { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  Rational& operator[](std::size_t i) { return entries_[i]; }
  const RationalVector& entries() const { return entries_; }
  std::span<const Rational> view() const { return entries_; }

  bool is_zero() const;
  bool operator==(const CoeffVector&) const = default;

 private:
  unsigned n_ = 0;
  unsigned d_ = 0;
  RationalVector entries_;
};

CoeffVector operator+(const CoeffVector& a, const CoeffVector& b);
CoeffVector operator*(const Rational& s, const CoeffVector& v);

/// Nonzero position of a 0/1 matrix.
struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  auto operator<=>(const MatrixEntry&) const = default;
};

/// The prolongation matrix J_{n,d}: multiplication by x_1 + ... + x_n from degree d
/// to degree d + 1 in lex coordinates. Immutable after construction.
class ProlongMatrix {
 public:
  /// Entries are sorted by (row, col); duplicates are rejected.
  ProlongMatrix(unsigned n, unsigned d, std::vector<MatrixEntry> entries);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  std::span<const MatrixEntry> entries() const { return entries_; }

  std::vector<std::size_t> column_counts() const;
  std::vector<std::size_t> row_counts() const;
  /// Row indices of the nonzeros in column c, ascending.
  std::span<const std::size_t> column(std::size_t c) const;
  /// Column indices of the nonzeros in row r, ascending.
  std::span<const std::size_t> row(std::size_t r) const;

  /// J * h for a vector of length cols().
  RationalVector multiply(std::span<const Rational> h) const;

  bool operator==(const ProlongMatrix& other) const {
    return n_ == other.n_ && d_ == other.d_ && entries_ == other.entries_;
  }

 private:
  unsigned n_;
  unsigned d_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<MatrixEntry> entries_;
  std::vector<std::size_t> col_start_, col_rows_;
  std::vector<std::size_t> row_start_, row_cols_;
};

/// Entry (beta, alpha) is 1 iff beta - alpha is a unit multi-index.
ProlongMatrix build_direct(unsigned n, unsigned d);

/// Assembles J_{n,d} from J_{n,d-1}, J_{n-1,d} and an identity block:
///
///   [ J_{n,d-1}   0 ]
///   [             I ]
///   [ 0   J_{n-1,d} ]
ProlongMatrix build_recursive(unsigned n, unsigned d);

/// Shared, lazily built J_{n,d} (direct construction). Thread-safe.
std::shared_ptr<const ProlongMatrix> prolong_matrix(unsigned n, unsigned d);

/// Orders of the identity blocks on the diagonal of the fully unrolled recursion:
/// C(n-2+j, j) for j = 0..d. They sum to C(n+d-1, d).
std::vector<std::size_t> identity_block_sizes(unsigned n, unsigned d);

CoeffVector apply(const ProlongMatrix& J, const CoeffVector& h);
/// Applies the cached J_{h.n(), h.d()}.
CoeffVector apply(const CoeffVector& h);

/// J_{n,d_to-1} ... J_{n,d_from} h, by repeated application.
CoeffVector iterated_apply(unsigned n, unsigned d_from, unsigned d_to, const CoeffVector& h);

/// Split of h by the power of x_1: blocks[j] holds the coefficients of x_1^{d-j} A_j(x_2..x_n),
/// slacks[0] = blocks[0], slacks[i] = J_{n-1,i-1} blocks[i-1] + blocks[i], tail = J_{n-1,d} blocks[d].
struct GammaDecomp {
  std::vector<CoeffVector> blocks;
  std::vector<CoeffVector> slacks;
  CoeffVector tail;

  /// Concatenation of the blocks (the original vector).
  CoeffVector reassemble() const;
  /// Concatenation of the slacks and the tail, which equals J_{n,d} h.
  RationalVector stacked() const;
};

/// Requires n >= 2.
GammaDecomp decompose(const CoeffVector& h);

/// Embeds a vector in n variables into n variables by prepending x_1 powers: the
/// coefficient vector of x_1^k * A.
CoeffVector multiply_by_x1_power(const CoeffVector& h, unsigned k);

}  // namespace prolong
