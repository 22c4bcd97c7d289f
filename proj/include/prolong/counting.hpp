#pragma once

#include <cstddef>
#include <span>

#include <json.hpp>

#include "prolong/rational.hpp"

namespace prolong {

/// Numbers of positive, negative and zero components of a vector. Signs are exact.
struct CountingProfile {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  std::size_t rank() const { return positive + negative; }
  std::size_t length() const { return positive + negative + zero; }
  bool operator==(const CountingProfile&) const = default;
};

CountingProfile profile(std::span<const Rational> v);

inline std::size_t rank_of(std::span<const Rational> v) { return profile(v).rank(); }

/// Componentwise v >= 0.
bool is_nonnegative(std::span<const Rational> v);

nlohmann::json to_json(const CountingProfile& p);

}  // namespace prolong
