#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "prolong/rational.hpp"

namespace prolong {

enum class Relation { equal, greater_equal, greater };

/// coeffs . x  (relation)  rhs
struct Constraint {
  RationalVector coeffs;
  Rational rhs;
  Relation relation = Relation::greater_equal;
  std::string tag;
};

/// A finite system of linear constraints over free rational variables.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  std::size_t size() const { return constraints_.size(); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Constraint& operator[](std::size_t i) const { return constraints_[i]; }

  /// Throws std::invalid_argument when the coefficient vector has the wrong length.
  void add(RationalVector coeffs, Relation relation, Rational rhs, std::string tag = {});
  /// Sparse convenience form: coefficient 1 at each listed index.
  void add_unit_sum(std::span<const std::size_t> indices, Relation relation, Rational rhs, std::string tag = {});

  bool has_strict() const;
  nlohmann::json to_json() const;

 private:
  std::size_t num_vars_;
  std::vector<Constraint> constraints_;
};

/// Either a witness satisfying every constraint, or multipliers (one per constraint,
/// nonnegative on inequality rows) whose combination reads 0 >= positive.
struct FeasResult {
  bool feasible = false;
  RationalVector witness;
  RationalVector multipliers;
};

/// Replaces every strict row a.x > 0 by a.x >= 1. The system must be homogeneous
/// (every rhs zero); throws std::invalid_argument otherwise.
LinearSystem homogenize_strict(const LinearSystem& system);

/// Exact feasibility by dual simplex with Bland's rule on a dictionary whose free
/// variables are pivoted in first. Strict rows are rejected (std::invalid_argument);
/// pass them through homogenize_strict.
FeasResult solve_feasibility(const LinearSystem& system);

/// Independent checks, usable on any system without strict rows.
bool satisfies(const LinearSystem& system, std::span<const Rational> x);
bool is_farkas_certificate(const LinearSystem& system, std::span<const Rational> multipliers);

}  // namespace prolong
