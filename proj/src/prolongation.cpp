#include "prolong/prolongation.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace prolong {

CoeffVector::CoeffVector(unsigned n, unsigned d) : n_(n), d_(d), entries_(basis_size(n, d)) {}

CoeffVector::CoeffVector(unsigned n, unsigned d, RationalVector entries)
    : n_(n), d_(d), entries_(std::move(entries)) {
  if (n == 0) throw std::invalid_argument("CoeffVector: n must be >= 1");
  if (entries_.size() != basis_size(n, d)) {
    throw std::invalid_argument("CoeffVector: length " + std::to_string(entries_.size()) +
                                " does not match C(n+d-1,d) = " + std::to_string(basis_size(n, d)));
  }
  for (auto& e : entries_) e.canonicalize();
}

bool CoeffVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q == 0; });
}

CoeffVector operator+(const CoeffVector& a, const CoeffVector& b) {
  if (a.n() != b.n() || a.d() != b.d()) throw std::invalid_argument("CoeffVector sum: shape mismatch");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return CoeffVector(a.n(), a.d(), std::move(out));
}

CoeffVector operator*(const Rational& s, const CoeffVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return CoeffVector(v.n(), v.d(), std::move(out));
}

ProlongMatrix::ProlongMatrix(unsigned n, unsigned d, std::vector<MatrixEntry> entries)
    : n_(n), d_(d), rows_(basis_size(n, d + 1)), cols_(basis_size(n, d)), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  if (std::adjacent_find(entries_.begin(), entries_.end()) != entries_.end()) {
    throw std::invalid_argument("ProlongMatrix: duplicate entry");
  }
  col_start_.assign(cols_ + 1, 0);
  row_start_.assign(rows_ + 1, 0);
  for (const auto& e : entries_) {
    if (e.row >= rows_ || e.col >= cols_) throw std::out_of_range("ProlongMatrix: entry out of range");
    ++col_start_[e.col + 1];
    ++row_start_[e.row + 1];
  }
  for (std::size_t c = 0; c < cols_; ++c) col_start_[c + 1] += col_start_[c];
  for (std::size_t r = 0; r < rows_; ++r) row_start_[r + 1] += row_start_[r];
  col_rows_.resize(entries_.size());
  row_cols_.resize(entries_.size());
  std::vector<std::size_t> col_fill(col_start_.begin(), col_start_.end() - 1);
  std::vector<std::size_t> row_fill(row_start_.begin(), row_start_.end() - 1);
  // entries_ is row-major sorted, so both fills come out ascending.
  for (const auto& e : entries_) {
    col_rows_[col_fill[e.col]++] = e.row;
    row_cols_[row_fill[e.row]++] = e.col;
  }
}

std::vector<std::size_t> ProlongMatrix::column_counts() const {
  std::vector<std::size_t> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = col_start_[c + 1] - col_start_[c];
  return out;
}

std::vector<std::size_t> ProlongMatrix::row_counts() const {
  std::vector<std::size_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = row_start_[r + 1] - row_start_[r];
  return out;
}

std::span<const std::size_t> ProlongMatrix::column(std::size_t c) const {
  return std::span<const std::size_t>(col_rows_).subspan(col_start_[c], col_start_[c + 1] - col_start_[c]);
}

std::span<const std::size_t> ProlongMatrix::row(std::size_t r) const {
  return std::span<const std::size_t>(row_cols_).subspan(row_start_[r], row_start_[r + 1] - row_start_[r]);
}

RationalVector ProlongMatrix::multiply(std::span<const Rational> h) const {
  if (h.size() != cols_) throw std::invalid_argument("ProlongMatrix::multiply: dimension mismatch");
  RationalVector out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (h[c] == 0) continue;
    for (std::size_t r : column(c)) out[r] += h[c];
  }
  return out;
}

ProlongMatrix build_direct(unsigned n, unsigned d) {
  if (n == 0) throw std::invalid_argument("build_direct: n must be >= 1");
  std::vector<MatrixEntry> entries;
  const auto basis = lex_basis(n, d);
  entries.reserve(basis.size() * n);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    for (std::size_t j = 0; j < n; ++j) entries.push_back({index_of(basis[c].times_variable(j)), c});
  }
  return ProlongMatrix(n, d, std::move(entries));
}

namespace {

std::vector<MatrixEntry> recursive_entries(unsigned n, unsigned d) {
  if (n == 1) return {{0, 0}};
  if (d == 0) {
    // A column of ones: x_1, ..., x_n.
    std::vector<MatrixEntry> out;
    for (std::size_t r = 0; r < n; ++r) out.push_back({r, 0});
    return out;
  }
  const std::size_t top_rows = basis_size(n, d);          // monomials of degree d+1 divisible by x_1
  const std::size_t left_cols = basis_size(n, d - 1);     // degree-d columns divisible by x_1
  const std::size_t ident = basis_size(n - 1, d);         // degree-d columns free of x_1
  std::vector<MatrixEntry> out = recursive_entries(n, d - 1);
  for (std::size_t i = 0; i < ident; ++i) out.push_back({top_rows - ident + i, left_cols + i});
  for (const auto& e : recursive_entries(n - 1, d)) out.push_back({top_rows + e.row, left_cols + e.col});
  return out;
}

}  // namespace

ProlongMatrix build_recursive(unsigned n, unsigned d) {
  if (n == 0) throw std::invalid_argument("build_recursive: n must be >= 1");
  return ProlongMatrix(n, d, recursive_entries(n, d));
}

std::shared_ptr<const ProlongMatrix> prolong_matrix(unsigned n, unsigned d) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const ProlongMatrix>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_shared<const ProlongMatrix>(build_direct(n, d));
  return slot;
}

std::vector<std::size_t> identity_block_sizes(unsigned n, unsigned d) {
  if (n < 2) throw std::invalid_argument("identity_block_sizes: n must be >= 2");
  std::vector<std::size_t> out;
  for (unsigned j = 0; j <= d; ++j) out.push_back(basis_size(n - 1, j));
  return out;
}

CoeffVector apply(const ProlongMatrix& J, const CoeffVector& h) {
  if (h.n() != J.n() || h.d() != J.d()) throw std::invalid_argument("apply: dimension mismatch");
  return CoeffVector(J.n(), J.d() + 1, J.multiply(h.view()));
}

CoeffVector apply(const CoeffVector& h) { return apply(*prolong_matrix(h.n(), h.d()), h); }

CoeffVector iterated_apply(unsigned n, unsigned d_from, unsigned d_to, const CoeffVector& h) {
  if (d_from > d_to) throw std::invalid_argument("iterated_apply: d_from > d_to");
  if (h.n() != n || h.d() != d_from) throw std::invalid_argument("iterated_apply: dimension mismatch");
  CoeffVector v = h;
  for (unsigned d = d_from; d < d_to; ++d) v = apply(v);
  return v;
}

CoeffVector GammaDecomp::reassemble() const {
  RationalVector out;
  for (const auto& b : blocks) out.insert(out.end(), b.entries().begin(), b.entries().end());
  const unsigned d = static_cast<unsigned>(blocks.size() - 1);
  return CoeffVector(blocks.front().n() + 1, d, std::move(out));
}

RationalVector GammaDecomp::stacked() const {
  RationalVector out;
  for (const auto& g : slacks) out.insert(out.end(), g.entries().begin(), g.entries().end());
  out.insert(out.end(), tail.entries().begin(), tail.entries().end());
  return out;
}

GammaDecomp decompose(const CoeffVector& h) {
  const unsigned n = h.n();
  const unsigned d = h.d();
  if (n < 2) throw std::invalid_argument("decompose: requires n >= 2");
  GammaDecomp out;
  std::size_t offset = 0;
  for (unsigned j = 0; j <= d; ++j) {
    const std::size_t len = basis_size(n - 1, j);
    RationalVector block(h.entries().begin() + offset, h.entries().begin() + offset + len);
    out.blocks.emplace_back(n - 1, j, std::move(block));
    offset += len;
  }
  out.slacks.push_back(out.blocks[0]);
  for (unsigned i = 1; i <= d; ++i) out.slacks.push_back(apply(out.blocks[i - 1]) + out.blocks[i]);
  out.tail = apply(out.blocks[d]);
  return out;
}

CoeffVector multiply_by_x1_power(const CoeffVector& h, unsigned k) {
  CoeffVector out(h.n(), h.d() + k);
  const auto basis = lex_basis(h.n(), h.d());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto e = basis[i].exponents();
    e[0] += k;
    out[index_of(MultiIndex(std::move(e)))] = h[i];
  }
  return out;
}

}  // namespace prolong
