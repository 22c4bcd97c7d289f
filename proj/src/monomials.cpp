#include "prolong/monomials.hpp"

#include <numeric>
#include <stdexcept>

#include "prolong/combinatorics.hpp"

namespace prolong {

unsigned MultiIndex::degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0u);
}

MultiIndex MultiIndex::times_variable(std::size_t j) const {
  if (j >= exponents_.size()) throw std::out_of_range("variable index out of range");
  auto e = exponents_;
  ++e[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::divided_by_variable(std::size_t j) const {
  if (j >= exponents_.size() || exponents_[j] == 0) {
    throw std::invalid_argument("monomial is not divisible by the variable");
  }
  auto e = exponents_;
  --e[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::times(const MultiIndex& other) const {
  if (other.variables() != variables()) throw std::invalid_argument("variable count mismatch");
  auto e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other[i];
  return MultiIndex(std::move(e));
}

bool lex_before(const MultiIndex& a, const MultiIndex& b) {
  const std::size_t n = std::min(a.variables(), b.variables());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

std::size_t basis_size(unsigned n, unsigned d) {
  if (n == 0) return d == 0 ? 1 : 0;
  return binomial_size(static_cast<std::uint64_t>(n) + d - 1, d);
}

namespace {

void enumerate(unsigned n, unsigned d, std::vector<unsigned>& prefix, std::vector<MultiIndex>& out) {
  if (prefix.size() + 1 == n) {
    prefix.push_back(d);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned a = d + 1; a-- > 0;) {
    prefix.push_back(a);
    enumerate(n, d - a, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> lex_basis(unsigned n, unsigned d) {
  if (n == 0) throw std::invalid_argument("lex_basis: n must be >= 1");
  std::vector<MultiIndex> out;
  out.reserve(basis_size(n, d));
  std::vector<unsigned> prefix;
  enumerate(n, d, prefix, out);
  return out;
}

std::size_t index_of(const MultiIndex& mi) {
  const std::size_t n = mi.variables();
  if (n == 0) throw std::invalid_argument("index_of: empty multi-index");
  unsigned remaining = mi.degree();
  std::size_t index = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Monomials that agree so far but have a larger exponent at position i come first.
    const unsigned rest_vars = static_cast<unsigned>(n - i - 1);
    for (unsigned v = remaining; v > mi[i]; --v) index += basis_size(rest_vars, remaining - v);
    remaining -= mi[i];
  }
  return index;
}

MultiIndex monomial_at(unsigned n, unsigned d, std::size_t i) {
  if (n == 0) throw std::invalid_argument("monomial_at: n must be >= 1");
  if (i >= basis_size(n, d)) throw std::out_of_range("monomial_at: index out of range");
  std::vector<unsigned> e(n, 0);
  unsigned remaining = d;
  for (unsigned pos = 0; pos + 1 < n; ++pos) {
    const unsigned rest_vars = n - pos - 1;
    unsigned v = remaining;
    while (true) {
      std::size_t block = basis_size(rest_vars, remaining - v);
      if (i < block) break;
      i -= block;
      --v;
    }
    e[pos] = v;
    remaining -= v;
  }
  e[n - 1] = remaining;
  return MultiIndex(std::move(e));
}

MonomialSpace::MonomialSpace(unsigned n, unsigned d, std::span<const MultiIndex> members) : n_(n), d_(d) {
  for (const auto& m : members) insert(m);
}

void MonomialSpace::insert(const MultiIndex& mi) {
  if (mi.variables() != n_ || mi.degree() != d_) {
    throw std::invalid_argument("monomial does not belong to this degree/variable count");
  }
  positions_.insert(index_of(mi));
}

void MonomialSpace::insert_position(std::size_t position) {
  if (position >= basis_size(n_, d_)) throw std::out_of_range("monomial position out of range");
  positions_.insert(position);
}

bool MonomialSpace::contains(const MultiIndex& mi) const {
  if (mi.variables() != n_ || mi.degree() != d_) return false;
  return positions_.count(index_of(mi)) > 0;
}

std::vector<MultiIndex> MonomialSpace::members() const {
  std::vector<MultiIndex> out;
  out.reserve(positions_.size());
  for (auto p : positions_) out.push_back(monomial_at(n_, d_, p));
  return out;
}

bool MonomialSpace::subset_of(const MonomialSpace& other) const {
  if (other.n_ != n_ || other.d_ != d_) return false;
  for (auto p : positions_) {
    if (!other.contains_position(p)) return false;
  }
  return true;
}

MonomialSpace shadow(const MonomialSpace& space) {
  MonomialSpace out(space.n(), space.d() + 1);
  for (const auto& m : space.members()) {
    for (std::size_t j = 0; j < space.n(); ++j) out.insert(m.times_variable(j));
  }
  return out;
}

std::size_t codim(const MonomialSpace& space) { return basis_size(space.n(), space.d()) - space.size(); }

MonomialSpace lex_segment(unsigned n, unsigned d, std::size_t size) {
  if (size > basis_size(n, d)) throw std::out_of_range("lex_segment: size exceeds the basis");
  MonomialSpace out(n, d);
  for (std::size_t i = 0; i < size; ++i) out.insert_position(i);
  return out;
}

}  // namespace prolong
