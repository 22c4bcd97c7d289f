#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prolong/prolongation.hpp"
#include "prolong/ratlp.hpp"

namespace prolong {

/// Status of one row of J h inside a branch-and-bound node.
enum class RowState : unsigned char { free, zero, positive };

struct SearchConfig {
  unsigned n = 2;
  unsigned d = 2;
  /// Optional starting incumbent; ignored unless it is a valid non-SOS point.
  std::optional<CoeffVector> initial_witness;
  /// Branch only on one negative column per orbit of the variable permutations.
  bool use_symmetry = true;
  std::uint64_t node_budget = 50'000'000;
  double time_budget_secs = 3600.0;
  std::string branch_order = "lex-first-positive";
  /// Seed the incumbent with the known extremal forms (lifted by powers of x1).
  bool seed_known_witnesses = true;
  /// Stop as soon as the incumbent meets the known floors (n, and 3n - 4 for d >= 2).
  /// The resulting certificate then depends on those theorems and is not self-contained.
  bool seed_floors = false;

  /// Throws std::invalid_argument unless n >= 2, d >= 1 and the budgets are positive.
  void validate() const;
};

/// One node of the branch-and-bound tree, as recorded in the certificate.
struct SearchNode {
  enum class Outcome { split, infeasible, bound, floor, open };

  std::uint64_t id = 0;
  std::optional<std::uint64_t> parent;
  std::size_t column = 0;               // the column j with h_j <= -1 in this subtree
  std::optional<std::size_t> fixed_row;  // row fixed when the node was created (absent at roots)
  RowState side = RowState::free;
  Outcome outcome = Outcome::open;
  std::optional<std::size_t> split_row;
  /// Nonzero multipliers over node_system(...) for infeasible leaves.
  std::vector<std::pair<std::size_t, Rational>> farkas;
  /// Number of rows forced positive at this node.
  std::size_t positives = 0;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t lp_solves = 0;
  std::uint64_t infeasible_leaves = 0;
  std::uint64_t bound_leaves = 0;
  double elapsed_secs = 0.0;
};

/// Result of a minimal-rank search: exact value with witness and exhaustion log when
/// complete, otherwise the bracket [lower_bound, upper_bound].
struct RndCertificate {
  unsigned n = 0;
  unsigned d = 0;
  bool complete = false;
  /// Complete and no h with h not >= 0 and J h >= 0 exists (the minimum is over an empty set).
  bool empty = false;
  std::size_t lower_bound = 0;
  std::optional<std::size_t> upper_bound;
  std::optional<CoeffVector> witness;
  bool symmetry = true;
  bool uses_floors = false;
  std::vector<std::size_t> branch_columns;
  std::vector<SearchNode> log;
  SearchStats stats;
  nlohmann::json config;

  /// The exact minimum when complete and nonempty.
  std::optional<std::size_t> value() const {
    if (complete && !empty) return upper_bound;
    return std::nullopt;
  }
};

/// The system for a node: -h_column > 0, (J h)_r = 0 on zero rows, > 0 on positive rows,
/// >= 0 on free rows, with strict rows homogenized to >= 1. Constraint 0 is the column
/// row; constraint 1 + r belongs to row r.
LinearSystem node_system(const ProlongMatrix& J, std::size_t column, std::span<const RowState> states);

/// Columns of lex_basis(n, d) whose exponent vector is non-increasing: one per orbit of the
/// symmetric group acting on the variables.
std::vector<std::size_t> orbit_representatives(unsigned n, unsigned d);

/// Known non-SOS forms with SOS prolongation for this (n, d), if any.
std::vector<CoeffVector> known_witnesses(unsigned n, unsigned d);

RndCertificate compute_rnd(const SearchConfig& config);

/// Replays the certificate against a freshly built J: witness validity and rank, orbit
/// coverage of the branch columns, tree shape, and every leaf (Farkas multipliers or the
/// positive-row bound). Certificates that rely on floors are rejected unless allowed.
bool verify_certificate(const RndCertificate& cert, std::string* reason = nullptr, bool allow_floors = false);

/// Rank-1 patch for a nonnegative block h_d over n-1 variables: delta >= 0 of degree d-1 with
/// J delta >= h_d. Built for P(h_d) = 1, and for P(h_d) = 2 when R(J h_d) = 2(n-1) - 1;
/// nullopt otherwise. A zero block gets a zero patch. Throws if h_d has a negative entry.
std::optional<CoeffVector> rank1_patch(const CoeffVector& block);

nlohmann::json to_json(const RndCertificate& cert);
/// Throws std::invalid_argument / nlohmann::json::exception on malformed input.
RndCertificate certificate_from_json(const nlohmann::json& j);

std::string to_string(SearchNode::Outcome outcome);

}  // namespace prolong
