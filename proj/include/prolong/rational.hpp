#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prolong {

using BigInt = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p", "p/q" or a finite decimal such as "-1.25". The result is
/// canonicalized. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

std::vector<std::string> to_strings(std::span<const Rational> values);
RationalVector parse_rationals(std::span<const std::string> texts);

}  // namespace prolong
