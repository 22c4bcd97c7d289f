#include "prolong/witnesses.hpp"

namespace prolong {

namespace {

CoeffVector from_ints(unsigned n, unsigned d, std::initializer_list<long> values) {
  RationalVector v;
  for (long x : values) v.emplace_back(x);
  return CoeffVector(n, d, std::move(v));
}

}  // namespace

CoeffVector witness_two_variables() { return from_ints(2, 2, {1, -1, 1}); }

// Lex basis (3,2): x1^2, x1x2, x1x3, x2^2, x2x3, x3^2
CoeffVector witness_f() { return from_ints(3, 2, {1, -1, 2, 1, -1, 1}); }

// Lex basis (4,2): x1^2, x1x2, x1x3, x1x4, x2^2, x2x3, x2x4, x3^2, x3x4, x4^2
CoeffVector witness_g() { return from_ints(4, 2, {1, -1, -1, 2, 1, 2, -1, 1, -1, 1}); }

std::optional<CoeffVector> named_witness(const std::string& name) {
  if (name == "f") return witness_f();
  if (name == "g") return witness_g();
  return std::nullopt;
}

}  // namespace prolong
