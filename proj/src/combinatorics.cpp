#include "prolong/combinatorics.hpp"

#include <stdexcept>

namespace prolong {

BigInt binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return BigInt(0);
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), a, b);
  return out;
}

std::size_t binomial_size(std::uint64_t a, std::uint64_t b) {
  BigInt v = binomial(a, b);
  if (!v.fits_ulong_p()) throw std::overflow_error("binomial coefficient exceeds size_t");
  return static_cast<std::size_t>(v.get_ui());
}

BigInt MacaulayRep::sum() const {
  BigInt s = 0;
  for (const auto& t : terms) s += binomial(t.top.get_ui(), t.bottom);
  return s;
}

bool MacaulayRep::well_formed() const {
  if (value == 0) return terms.empty();
  if (terms.empty() || terms.front().bottom != degree) return false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (t.bottom < 1 || t.top < t.bottom) return false;
    if (i > 0) {
      if (t.bottom + 1 != terms[i - 1].bottom) return false;
      if (!(t.top < terms[i - 1].top)) return false;
    }
  }
  return sum() == value;
}

namespace {

// Largest k >= bottom with C(k, bottom) <= value, for value >= 1.
std::uint64_t greedy_top(const BigInt& value, unsigned bottom) {
  std::uint64_t lo = bottom;  // C(bottom, bottom) = 1 <= value
  std::uint64_t step = 1;
  std::uint64_t hi = lo + step;
  while (binomial(hi, bottom) <= value) {
    lo = hi;
    step *= 2;
    hi = lo + step;
  }
  // invariant: C(lo) <= value < C(hi)
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (binomial(mid, bottom) <= value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

MacaulayRep macaulay_rep(const BigInt& value, unsigned degree) {
  if (degree < 1) throw std::invalid_argument("macaulay_rep: degree must be >= 1");
  if (value < 0) throw std::invalid_argument("macaulay_rep: value must be nonnegative");
  MacaulayRep rep;
  rep.value = value;
  rep.degree = degree;
  BigInt rest = value;
  for (unsigned i = degree; i >= 1 && rest > 0; --i) {
    std::uint64_t k = greedy_top(rest, i);
    rep.terms.push_back({BigInt(static_cast<unsigned long>(k)), i});
    rest -= binomial(k, i);
  }
  return rep;
}

BigInt macaulay_step(const BigInt& value, unsigned degree) {
  MacaulayRep rep = macaulay_rep(value, degree);
  BigInt out = 0;
  for (const auto& t : rep.terms) out += binomial(t.top.get_ui() + 1, t.bottom + 1);
  return out;
}

unsigned kappa0(unsigned n) {
  if (n < 2) throw std::invalid_argument("kappa0: n must be >= 2");
  unsigned k = 0;
  while (static_cast<std::uint64_t>(k + 1) * (k + 2) / 2 < n) ++k;
  return k;
}

ConjectureBands conjecture_bands(unsigned n) {
  ConjectureBands out;
  out.n = n;
  out.kappa0 = kappa0(n);
  for (unsigned k = 0; k <= out.kappa0; ++k) {
    std::uint64_t high = static_cast<std::uint64_t>(k) * n;
    std::uint64_t low = high - static_cast<std::uint64_t>(k) * (k > 0 ? k - 1 : 0) / 2;
    out.bands.push_back({k, low, high});
  }
  const std::uint64_t k1 = out.kappa0 + 1;
  out.threshold = k1 * n - k1 * out.kappa0 / 2 - 1;
  return out;
}

BandVerdict classify_rank(const ConjectureBands& bands, std::uint64_t rank) {
  if (rank == 0) return {BandClass::zero, std::nullopt};
  for (const auto& b : bands.bands) {
    if (b.kappa > 0 && b.low <= rank && rank <= b.high) return {BandClass::in_band, b.kappa};
  }
  if (rank >= bands.threshold) return {BandClass::above_threshold, std::nullopt};
  return {BandClass::in_gap, std::nullopt};
}

std::string to_string(BandClass kind) {
  switch (kind) {
    case BandClass::zero: return "zero";
    case BandClass::in_band: return "in-band";
    case BandClass::in_gap: return "in-gap";
    case BandClass::above_threshold: return "above-threshold";
  }
  return "unknown";
}

}  // namespace prolong
