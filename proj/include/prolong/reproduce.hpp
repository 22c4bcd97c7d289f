#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prolong/prolongation.hpp"

namespace prolong {

struct ReproduceConfig {
  /// When set, certificates are read from and written to this cache.
  std::optional<std::filesystem::path> cache;
  /// Time budget for the (5,2) search.
  double bracket_budget_secs = 3600.0;
  std::uint64_t node_budget = 50'000'000;
  /// Replacements for the stored witnesses "f" and "g" (used to exercise the failure path).
  std::map<std::string, CoeffVector> witness_overrides;
};

struct ReproduceRow {
  std::string label;
  unsigned n = 0;
  unsigned d = 0;
  std::string kind;  // "witness", "exact" or "bracket"
  std::optional<std::size_t> value;
  std::optional<std::size_t> lower;
  std::optional<std::size_t> upper;
  std::size_t floor = 0;     // max(3n - 4, and (n^2 + n)/2 - 6 when d = 2)
  std::size_t expected = 0;  // the target the row is judged against
  std::string status;        // "pass", "fail" or "incomplete"
  std::string note;
};

struct ReproduceTable {
  std::vector<ReproduceRow> rows;
  /// No row failed (incomplete rows do not count as failures).
  bool ok() const;
  bool any_incomplete() const;
};

ReproduceTable reproduce(const ReproduceConfig& config);

std::string to_csv(const ReproduceTable& table);
nlohmann::json to_json(const ReproduceTable& table);

}  // namespace prolong
