#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prolong/search.hpp"

namespace prolong {

/// FNV-1a 64 over the compact JSON dump, as 16 hex digits.
std::string content_hash(const nlohmann::json& j);

/// File-backed map (n, d) -> certificate. Entries carry a content hash and are re-verified
/// on every read; anything that fails is reported and never returned.
class ResultsCache {
 public:
  static constexpr int schema_version = 1;

  /// Loads the file if it exists. Throws std::runtime_error if it is not a cache file of
  /// this schema; individual bad entries are kept and rejected at lookup.
  explicit ResultsCache(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  bool contains(unsigned n, unsigned d) const { return entries_.count({n, d}) > 0; }

  /// The verified certificate, or nullopt with `problem` set when the entry is missing,
  /// hashes wrongly, does not parse, or fails verification.
  std::optional<RndCertificate> get(unsigned n, unsigned d, std::string* problem = nullptr) const;

  /// Stores a complete certificate that passes verification; throws std::invalid_argument otherwise.
  void put(const RndCertificate& cert);

  /// Writes atomically (temporary file, then rename).
  void save() const;

 private:
  std::filesystem::path path_;
  std::map<std::pair<unsigned, unsigned>, nlohmann::json> entries_;
};

}  // namespace prolong
