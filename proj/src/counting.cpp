#include "prolong/counting.hpp"

#include <algorithm>

namespace prolong {

CountingProfile profile(std::span<const Rational> v) {
  CountingProfile p;
  for (const auto& x : v) {
    switch (sgn(x)) {
      case 1: ++p.positive; break;
      case -1: ++p.negative; break;
      default: ++p.zero; break;
    }
  }
  return p;
}

bool is_nonnegative(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) >= 0; });
}

nlohmann::json to_json(const CountingProfile& p) {
  return {{"P", p.positive}, {"N", p.negative}, {"Z", p.zero}, {"R", p.rank()}};
}

}  // namespace prolong
