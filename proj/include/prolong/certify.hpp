#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "prolong/combinatorics.hpp"
#include "prolong/counting.hpp"
#include "prolong/prolongation.hpp"

namespace prolong {

/// A diagonal form is a sum of squares iff every coefficient is nonnegative.
bool is_sos_diagonal(const CoeffVector& h);

/// R(J_{n,d} h) when J_{n,d} h >= 0, otherwise nullopt.
std::optional<std::size_t> prolongation_rank(const CoeffVector& h);

struct DegreeCert {
  unsigned degree = 0;
  bool is_sos = false;
  bool prolong_sos = false;
  std::size_t rank = 0;  // R(J h) whether or not the prolongation is SOS
  CountingProfile coefficients;
  CountingProfile prolonged;
  /// Degree 0 or 1 with a negative coefficient: never SOS after one prolongation.
  bool low_degree_obstruction = false;
  /// A certified instance that contradicts one of the known rank floors.
  bool floor_violation = false;
};

struct CertReport {
  unsigned n = 0;
  std::vector<DegreeCert> parts;  // ascending degree
  bool is_sos = true;
  bool prolong_sos = true;
  std::size_t total_rank = 0;
  ConjectureBands bands;
  std::optional<BandVerdict> band;  // set when the prolongation is SOS
  bool floor_violation = false;
};

/// Certifies an inhomogeneous diagonal form given by its bihomogeneous parts.
/// Throws std::invalid_argument for an empty list, mixed n, n < 2 or a repeated degree.
CertReport certify_polynomial(std::span<const CoeffVector> parts);

nlohmann::json to_json(const CertReport& report);

}  // namespace prolong
