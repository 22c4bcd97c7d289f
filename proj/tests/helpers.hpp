#pragma once

#include <initializer_list>
#include <random>

#include "prolong/prolongation.hpp"

namespace testing_helpers {

inline prolong::RationalVector rationals(std::initializer_list<long> values) {
  prolong::RationalVector v;
  for (long x : values) v.emplace_back(x);
  return v;
}

inline prolong::CoeffVector coeffs(unsigned n, unsigned d, std::initializer_list<long> values) {
  return prolong::CoeffVector(n, d, rationals(values));
}

/// Entries in {-3..3} / {1,2}, each zero with probability about 1/3.
inline prolong::CoeffVector random_vector(unsigned n, unsigned d, std::mt19937_64& rng) {
  prolong::CoeffVector h(n, d);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (rng() % 3 == 0) continue;
    const long num = static_cast<long>(rng() % 7) - 3;
    h[i] = prolong::Rational(num, static_cast<long>(1 + rng() % 2));
    h[i].canonicalize();
  }
  return h;
}

}  // namespace testing_helpers
