#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "prolong/cache.hpp"
#include "prolong/reproduce.hpp"
#include "prolong/witnesses.hpp"

using namespace prolong;
namespace fs = std::filesystem;

namespace {

fs::path scratch_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "prolong-tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

RndCertificate rnd(unsigned n, unsigned d) {
  SearchConfig c;
  c.n = n;
  c.d = d;
  return compute_rnd(c);
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

void write_json(const fs::path& p, const nlohmann::json& j) {
  std::ofstream out(p);
  out << j.dump(1);
}

const ReproduceRow& row(const ReproduceTable& t, const std::string& label) {
  for (const auto& r : t.rows)
    if (r.label == label) return r;
  throw std::runtime_error("missing row " + label);
}

}  // namespace

TEST(Hash, StableAndSensitive) {
  const nlohmann::json a = {{"x", 1}};
  EXPECT_EQ(content_hash(a), content_hash(nlohmann::json{{"x", 1}}));
  EXPECT_NE(content_hash(a), content_hash(nlohmann::json{{"x", 2}}));
  EXPECT_EQ(content_hash(a).size(), 16u);
}

TEST(Cache, RoundTrip) {
  const auto path = scratch_file("round.json");
  {
    ResultsCache cache(path);
    EXPECT_FALSE(cache.contains(3, 2));
    cache.put(rnd(3, 2));
    cache.put(rnd(2, 2));
    cache.save();
  }
  ResultsCache cache(path);
  EXPECT_TRUE(cache.contains(3, 2));
  std::string problem;
  const auto cert = cache.get(3, 2, &problem);
  ASSERT_TRUE(cert.has_value()) << problem;
  EXPECT_EQ(cert->value(), 5u);
  EXPECT_TRUE(verify_certificate(*cert));
  EXPECT_FALSE(cache.get(4, 2, &problem).has_value());
  EXPECT_EQ(problem, "no entry");
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST(Cache, SaveIsByteStable) {
  const auto a = scratch_file("stable-a.json"), b = scratch_file("stable-b.json");
  for (const auto& p : {a, b}) {
    ResultsCache cache(p);
    cache.put(rnd(3, 2));
    cache.save();
  }
  std::ifstream ia(a), ib(b);
  const std::string sa((std::istreambuf_iterator<char>(ia)), {}), sb((std::istreambuf_iterator<char>(ib)), {});
  EXPECT_EQ(sa, sb);
}

TEST(Cache, RejectsIncompleteOrInvalid) {
  ResultsCache cache(scratch_file("reject.json"));
  SearchConfig c;
  c.n = 5;
  c.d = 2;
  c.node_budget = 20;
  EXPECT_THROW(cache.put(compute_rnd(c)), std::invalid_argument);
  auto bad = rnd(3, 2);
  *bad.upper_bound -= 1;
  EXPECT_THROW(cache.put(bad), std::invalid_argument);
}

TEST(Cache, HashTamperIsRejected) {
  const auto path = scratch_file("hash.json");
  {
    ResultsCache cache(path);
    cache.put(rnd(3, 2));
    cache.save();
  }
  auto doc = read_json(path);
  doc["entries"]["3,2"]["certificate"]["witness"][0] = "7";
  write_json(path, doc);
  std::string problem;
  EXPECT_FALSE(ResultsCache(path).get(3, 2, &problem).has_value());
  EXPECT_EQ(problem, "content hash mismatch");
}

TEST(Cache, WitnessTamperWithRecomputedHashIsRejected) {
  const auto path = scratch_file("witness.json");
  {
    ResultsCache cache(path);
    cache.put(rnd(3, 2));
    cache.save();
  }
  auto doc = read_json(path);
  auto& entry = doc["entries"]["3,2"];
  for (auto& x : entry["certificate"]["witness"])
    if (x.get<std::string>().front() == '-') x = "1";
  entry["hash"] = content_hash(entry["certificate"]);
  write_json(path, doc);
  std::string problem;
  EXPECT_FALSE(ResultsCache(path).get(3, 2, &problem).has_value());
  EXPECT_NE(problem.find("verification failed"), std::string::npos) << problem;
}

TEST(Cache, MisfiledEntryIsRejected) {
  const auto path = scratch_file("misfiled.json");
  {
    ResultsCache cache(path);
    cache.put(rnd(3, 2));
    cache.save();
  }
  auto doc = read_json(path);
  doc["entries"]["2,2"] = doc["entries"]["3,2"];
  write_json(path, doc);
  std::string problem;
  EXPECT_FALSE(ResultsCache(path).get(2, 2, &problem).has_value());
  EXPECT_EQ(problem, "entry is filed under the wrong key");
}

TEST(Cache, SchemaErrors) {
  const auto path = scratch_file("schema.json");
  write_json(path, {{"schema_version", 99}, {"entries", nlohmann::json::object()}});
  EXPECT_THROW(ResultsCache{path}, std::runtime_error);
  {
    std::ofstream out(path);
    out << "not json";
  }
  EXPECT_THROW(ResultsCache{path}, std::runtime_error);
  write_json(path, {{"schema_version", 1}, {"entries", {{"three", nlohmann::json::object()}}}});
  EXPECT_THROW(ResultsCache{path}, std::runtime_error);
}

TEST(Reproduce, CleanRunPasses) {
  ReproduceConfig cfg;
  cfg.bracket_budget_secs = 600;
  const auto table = reproduce(cfg);
  EXPECT_TRUE(table.ok()) << to_csv(table);
  ASSERT_EQ(table.rows.size(), 6u);
  EXPECT_EQ(row(table, "witness f").value, 5u);
  EXPECT_EQ(row(table, "witness g").value, 8u);
  EXPECT_EQ(row(table, "R(2,2)").value, 2u);
  EXPECT_EQ(row(table, "R(3,2)").value, 5u);
  EXPECT_EQ(row(table, "R(3,2)").floor, 5u);
  EXPECT_EQ(row(table, "R(4,2)").value, 8u);
  const auto& five = row(table, "R(5,2)");
  EXPECT_EQ(five.status, "pass");
  ASSERT_TRUE(five.lower.has_value());
  EXPECT_GE(*five.lower, 11u);
  const auto csv = to_csv(table);
  EXPECT_EQ(csv.rfind("label,n,d,kind,value,lower,upper,floor,expected,status,note\n", 0), 0u);
  EXPECT_EQ(to_json(table)["rows"].size(), 6u);
}

TEST(Reproduce, TamperedStoredWitnessFails) {
  ReproduceConfig cfg;
  auto f = witness_f();
  f[1] = 1;
  cfg.witness_overrides["f"] = f;
  auto g = witness_g();
  g[0] = 0;
  cfg.witness_overrides["g"] = g;
  cfg.node_budget = 50;
  const auto table = reproduce(cfg);
  EXPECT_FALSE(table.ok());
  EXPECT_EQ(row(table, "witness f").status, "fail");
  EXPECT_EQ(row(table, "witness g").status, "fail");
  EXPECT_EQ(row(table, "R(2,2)").status, "pass");
}

TEST(Reproduce, TamperedCachedCertificateFails) {
  const auto path = scratch_file("reproduce.json");
  ReproduceConfig cfg;
  cfg.cache = path;
  cfg.node_budget = 200;
  const auto first = reproduce(cfg);
  EXPECT_TRUE(first.ok());
  EXPECT_EQ(row(reproduce(cfg), "R(4,2)").note, "from cache");

  auto doc = read_json(path);
  auto& entry = doc["entries"]["4,2"];
  for (auto& x : entry["certificate"]["witness"])
    if (x.get<std::string>().front() == '-') {
      x = "1";
      break;
    }
  entry["hash"] = content_hash(entry["certificate"]);
  write_json(path, doc);
  const auto table = reproduce(cfg);
  EXPECT_FALSE(table.ok());
  EXPECT_EQ(row(table, "R(4,2)").status, "fail");
  EXPECT_EQ(row(table, "R(3,2)").status, "pass");
}
