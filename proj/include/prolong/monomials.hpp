#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <span>
#include <vector>

namespace prolong {

/// Exponent vector of a monomial in n variables.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<unsigned> exponents) : exponents_(exponents) {}

  std::size_t variables() const { return exponents_.size(); }
  unsigned degree() const;
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  const std::vector<unsigned>& exponents() const { return exponents_; }

  /// this + e_j
  MultiIndex times_variable(std::size_t j) const;
  /// this - e_j; requires exponent j >= 1.
  MultiIndex divided_by_variable(std::size_t j) const;
  /// this + other; both must have the same number of variables.
  MultiIndex times(const MultiIndex& other) const;

  bool operator==(const MultiIndex&) const = default;
  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<unsigned> exponents_;
};

/// True when a precedes b in left lexicographic order (x1^d first, xn^d last).
bool lex_before(const MultiIndex& a, const MultiIndex& b);

/// C(n + d - 1, d), the number of degree-d monomials in n variables.
std::size_t basis_size(unsigned n, unsigned d);

/// All degree-d multi-indices in n variables, in left lexicographic order.
std::vector<MultiIndex> lex_basis(unsigned n, unsigned d);

/// Position of mi inside lex_basis(mi.variables(), mi.degree()).
std::size_t index_of(const MultiIndex& mi);

/// Inverse of index_of. Throws std::out_of_range for i >= basis_size(n, d).
MultiIndex monomial_at(unsigned n, unsigned d, std::size_t i);

/// A set of degree-d monomials in n variables, stored by lex position.
class MonomialSpace {
 public:
  MonomialSpace(unsigned n, unsigned d) : n_(n), d_(d) {}
  MonomialSpace(unsigned n, unsigned d, std::span<const MultiIndex> members);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }

  /// Throws std::invalid_argument if mi is not a degree-d monomial in n variables.
  void insert(const MultiIndex& mi);
  void insert_position(std::size_t position);
  bool contains(const MultiIndex& mi) const;
  bool contains_position(std::size_t position) const { return positions_.count(position) > 0; }
  const std::set<std::size_t>& positions() const { return positions_; }
  std::vector<MultiIndex> members() const;

  bool subset_of(const MonomialSpace& other) const;
  bool operator==(const MonomialSpace&) const = default;

 private:
  unsigned n_;
  unsigned d_;
  std::set<std::size_t> positions_;
};

/// Degree-(d+1) part of the ideal generated by the space: { m * x_j }.
MonomialSpace shadow(const MonomialSpace& space);

/// C(n + d - 1, d) - |space|.
std::size_t codim(const MonomialSpace& space);

/// The first `size` monomials of lex_basis(n, d). Throws std::out_of_range when too large.
MonomialSpace lex_segment(unsigned n, unsigned d, std::size_t size);

}  // namespace prolong
