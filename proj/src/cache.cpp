#include "prolong/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace prolong {

std::string content_hash(const nlohmann::json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string key_of(unsigned n, unsigned d) { return std::to_string(n) + "," + std::to_string(d); }

std::pair<unsigned, unsigned> parse_key(const std::string& key) {
  unsigned n = 0, d = 0;
  char comma = 0;
  std::istringstream in(key);
  if (!(in >> n >> comma >> d) || comma != ',' || !in.eof()) throw std::runtime_error("cache: bad key '" + key + "'");
  return {n, d};
}

}  // namespace

ResultsCache::ResultsCache(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("cache: " + path_.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || doc.value("schema_version", -1) != schema_version || !doc.contains("entries") ||
      !doc.at("entries").is_object())
    throw std::runtime_error("cache: " + path_.string() + " has an unsupported layout");
  for (const auto& [key, entry] : doc.at("entries").items()) entries_[parse_key(key)] = entry;
}

std::optional<RndCertificate> ResultsCache::get(unsigned n, unsigned d, std::string* problem) const {
  auto fail = [&](const std::string& why) -> std::optional<RndCertificate> {
    if (problem) *problem = why;
    return std::nullopt;
  };
  const auto it = entries_.find({n, d});
  if (it == entries_.end()) return fail("no entry");
  const nlohmann::json& entry = it->second;
  if (!entry.is_object() || !entry.contains("hash") || !entry.contains("certificate"))
    return fail("malformed entry");
  if (!entry.at("hash").is_string() || entry.at("hash").get<std::string>() != content_hash(entry.at("certificate")))
    return fail("content hash mismatch");
  RndCertificate cert;
  try {
    cert = certificate_from_json(entry.at("certificate"));
  } catch (const std::exception& e) {
    return fail(std::string("unparsable certificate: ") + e.what());
  }
  if (cert.n != n || cert.d != d) return fail("entry is filed under the wrong key");
  std::string why;
  if (!verify_certificate(cert, &why)) return fail("verification failed: " + why);
  return cert;
}

void ResultsCache::put(const RndCertificate& cert) {
  std::string why;
  if (!cert.complete) throw std::invalid_argument("cache: only complete certificates are stored");
  if (!verify_certificate(cert, &why)) throw std::invalid_argument("cache: certificate does not verify: " + why);
  nlohmann::json body = to_json(cert);
  entries_[{cert.n, cert.d}] = {{"hash", content_hash(body)}, {"certificate", std::move(body)}};
}

void ResultsCache::save() const {
  nlohmann::json doc = {{"schema_version", schema_version}, {"entries", nlohmann::json::object()}};
  for (const auto& [key, entry] : entries_) doc["entries"][key_of(key.first, key.second)] = entry;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  const std::filesystem::path tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    out << doc.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace prolong
