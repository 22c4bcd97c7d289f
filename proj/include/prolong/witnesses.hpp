#pragma once

#include <optional>
#include <string>

#include "prolong/prolongation.hpp"

namespace prolong {

/// x1^2 - x1 x2 + x2^2 (n = 2, d = 2); its prolongation is x1^3 + x2^3.
CoeffVector witness_two_variables();

/// f = (x1 - x2 + x3)^2 / 2 + x2^2 / 2 + (x1 + x3)^2 / 2, as a diagonal form in 3 variables.
CoeffVector witness_f();

/// g = (x1 - x2 - x3 + x4)^2 / 2 + (x1 + x4)^2 / 2 + (x2 + x3)^2 / 2, in 4 variables.
CoeffVector witness_g();

/// "f" or "g"; nullopt for anything else.
std::optional<CoeffVector> named_witness(const std::string& name);

}  // namespace prolong
