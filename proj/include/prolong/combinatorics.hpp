#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prolong/rational.hpp"

namespace prolong {

/// C(a, b) as a big integer; zero when b > a.
BigInt binomial(std::uint64_t a, std::uint64_t b);

/// C(a, b) narrowed to std::size_t. Throws std::overflow_error if it does not fit.
std::size_t binomial_size(std::uint64_t a, std::uint64_t b);

/// One summand C(top, bottom) of a Macaulay representation.
struct MacaulayTerm {
  BigInt top;
  unsigned bottom = 0;

  bool operator==(const MacaulayTerm&) const = default;
};

/// The d-th Macaulay representation N = C(k_d, d) + C(k_{d-1}, d-1) + ... + C(k_s, s)
/// with k_d > k_{d-1} > ... > k_s >= s >= 1. Terms are stored with descending bottoms.
struct MacaulayRep {
  BigInt value;
  unsigned degree = 1;
  std::vector<MacaulayTerm> terms;

  BigInt sum() const;
  /// Checks strict descent of tops, unit steps of bottoms, k_s >= s >= 1 and sum == value.
  bool well_formed() const;
};

MacaulayRep macaulay_rep(const BigInt& value, unsigned degree);

/// N^<d>: sum of C(k_i + 1, i + 1) over the representation; 0^<d> = 0.
BigInt macaulay_step(const BigInt& value, unsigned degree);

/// Largest kappa with kappa (kappa + 1) / 2 < n. Requires n >= 2.
unsigned kappa0(unsigned n);

struct RankBand {
  unsigned kappa = 0;
  std::uint64_t low = 0;
  std::uint64_t high = 0;
};

/// Predicted rank intervals [kappa n - kappa (kappa - 1) / 2, kappa n] for kappa = 0..kappa0
/// together with the threshold (kappa0 + 1) n - (kappa0 + 1) kappa0 / 2 - 1.
struct ConjectureBands {
  unsigned n = 0;
  unsigned kappa0 = 0;
  std::vector<RankBand> bands;
  std::uint64_t threshold = 0;
};

ConjectureBands conjecture_bands(unsigned n);

enum class BandClass { zero, in_band, in_gap, above_threshold };

struct BandVerdict {
  BandClass kind = BandClass::zero;
  std::optional<unsigned> kappa;  // set for in_band
};

BandVerdict classify_rank(const ConjectureBands& bands, std::uint64_t rank);

std::string to_string(BandClass kind);

}  // namespace prolong
