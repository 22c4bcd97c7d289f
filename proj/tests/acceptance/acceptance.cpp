// One PASS/FAIL line per acceptance criterion. Limits and trial counts are pinned here.
// Usage: acceptance <path-to-cli> <scratch-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracle.hpp"
#include "prolong/cache.hpp"
#include "prolong/certify.hpp"
#include "prolong/combinatorics.hpp"
#include "prolong/lemmas.hpp"
#include "prolong/reproduce.hpp"
#include "prolong/search.hpp"
#include "prolong/witnesses.hpp"

using namespace prolong;
namespace fs = std::filesystem;

namespace {

constexpr double kMatrixSecs = 10.0;
constexpr double kWitnessSecs = 1.0;
constexpr double kR22Secs = 1.0;
constexpr double kR32Secs = 60.0;
constexpr double kR42Secs = 1800.0;
constexpr double kBracketBudgetSecs = 3600.0;
constexpr std::size_t kBracketFloor52 = 11;
constexpr std::uint64_t kFirstTrials = 10'000, kSecondTrials = 10'000, kGhpTrials = 1'000, kGaoNgTrials = 1'000;
constexpr std::uint64_t kMacaulayTrials = 10'000, kBlockTrials = 10'000, kMinConforming = 1'000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  if (!out.ok) ++failures;
  std::printf("%s %2d %s (%.2fs)%s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), seconds_since(start),
              out.detail.str().c_str());
  std::fflush(stdout);
}

RndCertificate timed_rnd(unsigned n, unsigned d, double limit, Outcome& out) {
  SearchConfig c;
  c.n = n;
  c.d = d;
  const auto start = Clock::now();
  auto cert = compute_rnd(c);
  const double secs = seconds_since(start);
  out.detail << " R(" << n << "," << d << ")=";
  if (cert.value()) out.detail << *cert.value();
  else out.detail << "?";
  out.detail << " in " << secs << "s";
  out.require(secs < limit, "runtime limit");
  std::string why;
  out.require(verify_certificate(cert, &why), "certificate replay: " + why);
  return cert;
}

void lemma_criterion(Outcome& out, const std::string& id, std::uint64_t trials, std::uint64_t min_conforming) {
  SuiteConfig cfg;
  cfg.seed = 1;
  cfg.trials = trials;
  const auto r = run_lemma(id, cfg);
  out.detail << " " << id << ": " << r.conforming << " conforming, " << r.violations << " violations";
  out.require(r.violations == 0, id + " violations");
  out.require(r.conforming >= min_conforming, id + " too few conforming instances");
}

int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli> <scratch-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path scratch = argv[2];
  fs::create_directories(scratch);

  criterion(1, "matrix structure", [](Outcome& out) {
    const auto start = Clock::now();
    int cells = 0;
    for (unsigned n = 2; n <= 8; ++n) {
      for (unsigned d = 1; d <= 8; ++d) {
        if (binomial(n + d, d + 1) > 100'000) continue;
        ++cells;
        const auto J = build_direct(n, d);
        const std::string cell = "(" + std::to_string(n) + "," + std::to_string(d) + ")";
        out.require(J == build_recursive(n, d), "recursive differs " + cell);
        out.require(J.rows() == binomial_size(n + d, d + 1) && J.cols() == binomial_size(n + d - 1, d), "dims " + cell);
        for (auto c : J.column_counts()) out.require(c == n, "column sum " + cell);
        for (auto r : J.row_counts()) out.require(r >= 1 && r <= n, "row count " + cell);
      }
    }
    out.detail << " " << cells << " cells";
    out.require(seconds_since(start) < kMatrixSecs, "runtime limit");
  });

  criterion(2, "extremal witnesses", [](Outcome& out) {
    const auto start = Clock::now();
    const std::vector<CoeffVector> f{witness_f()}, g{witness_g()};
    const auto rf = certify_polynomial(f), rg = certify_polynomial(g);
    RationalVector expected;
    for (long x : {1, 0, 3, 0, 0, 3, 1, 0, 0, 1}) expected.emplace_back(x);
    out.require(apply(witness_f()).entries() == expected, "J f");
    out.require(rf.total_rank == 5 && rf.prolong_sos && !rf.is_sos, "f certificate");
    out.require(rg.total_rank == 8 && rg.prolong_sos && !rg.is_sos, "g certificate");
    out.detail << " R(Jf)=" << rf.total_rank << " R(Jg)=" << rg.total_rank;
    out.require(seconds_since(start) < kWitnessSecs, "runtime limit");
  });

  std::optional<RndCertificate> r22, r32, r42;
  criterion(3, "exact minimal ranks", [&](Outcome& out) {
    r22 = timed_rnd(2, 2, kR22Secs, out);
    r32 = timed_rnd(3, 2, kR32Secs, out);
    r42 = timed_rnd(4, 2, kR42Secs, out);
    out.require(r22->value() == 2u, "R(2,2) = 2");
    out.require(r32->value() == 5u, "R(3,2) = 5");
    out.require(r42->value() == 8u, "R(4,2) = 8");
    for (const auto* cert : {&*r22, &*r32}) {
      const auto brute = oracle::min_rank_extreme_rays(cert->n, cert->d);
      out.require(brute == cert->value(), "brute-force oracle at n=" + std::to_string(cert->n));
    }
    out.require(r22->witness && *r22->witness == witness_two_variables(), "R(2,2) witness");
  });

  criterion(4, "rank floors and the (5,2) bracket", [&](Outcome& out) {
    for (const auto* cert : {&*r22, &*r32, &*r42}) {
      const std::size_t floor = 3 * cert->n - 4;
      out.require(cert->value() && *cert->value() >= floor, "3n-4 floor at n=" + std::to_string(cert->n));
    }
    SearchConfig c;
    c.n = 5;
    c.d = 2;
    c.time_budget_secs = kBracketBudgetSecs;
    const auto five = compute_rnd(c);
    out.require(verify_certificate(five), "(5,2) certificate replay");
    out.detail << " (5,2) bracket [" << five.lower_bound << ","
               << (five.upper_bound ? std::to_string(*five.upper_bound) : "-") << "]";
    out.require(five.lower_bound >= kBracketFloor52, "(5,2) lower bound >= 11");
    if (five.value()) out.require(*five.value() >= 3 * 5 - 4, "(5,2) floor");
    c.n = 6;
    const auto six = compute_rnd(c);
    out.require(verify_certificate(six), "(6,2) certificate replay");
    out.detail << " (6,2) bracket [" << six.lower_bound << ","
               << (six.upper_bound ? std::to_string(*six.upper_bound) : "-") << "]";
    if (six.value()) {
      out.require(*six.value() >= 3 * 6 - 4, "(6,2) 3n-4 floor");
      out.require(*six.value() >= (6 * 6 + 6) / 2 - 6, "(6,2) quadratic floor");
    }
  });

  criterion(5, "first-prolongation counting inequalities", [](Outcome& out) {
    lemma_criterion(out, "first-prolongation", kFirstTrials, 6 * kFirstTrials);
  });

  criterion(6, "second-prolongation zero bound", [](Outcome& out) {
    lemma_criterion(out, "second-prolongation", kSecondTrials, 5 * kSecondTrials);
    RationalVector a{Rational(-1), Rational(-1)};
    const auto tight = check_second_prolongation(a, 2);
    out.require(tight.passed() && tight.worst_slack == 0, "n=2 all-negative tightness");
  });

  criterion(7, "nonnegative sandwich bounds", [](Outcome& out) {
    lemma_criterion(out, "ghp-sandwich", kGhpTrials, 12 * kGhpTrials);
  });

  criterion(8, "mixed-sign support bound", [](Outcome& out) {
    lemma_criterion(out, "gao-ng-support", kGaoNgTrials, 192 * kGaoNgTrials);
  });

  criterion(9, "shadow growth bound", [](Outcome& out) {
    lemma_criterion(out, "macaulay-shadow", kMacaulayTrials, 16 * kMacaulayTrials);
  });

  criterion(10, "block identities", [](Outcome& out) {
    lemma_criterion(out, "block-identity", kBlockTrials, 16 * kBlockTrials);
  });

  criterion(11, "constructive floor checks", [](Outcome& out) {
    for (const char* id :
         {"structural-d2", "single-slack-block", "two-block-combination", "single-negative", "sign-pattern-floor"})
      lemma_criterion(out, id, 0, kMinConforming);
  });

  criterion(12, "reproduce table and tamper detection", [&](Outcome& out) {
    ReproduceConfig cfg;
    cfg.cache = scratch / "reproduce-cache.json";
    fs::remove(*cfg.cache);
    const auto clean = reproduce(cfg);
    out.require(clean.ok() && !clean.any_incomplete(), "library reproduce clean");

    const int rc = run_cli(cli, "--cache \"" + (scratch / "cli-cache.json").string() + "\" reproduce",
                           scratch / "reproduce.csv");
    out.detail << " cli exit " << rc;
    out.require(rc == 0, "cli reproduce exits 0");

    const int tampered_rc = run_cli(cli, "reproduce --witness f=1,1,2,1,-1,1", scratch / "reproduce-tampered.csv");
    out.detail << ", tampered witness exit " << tampered_rc;
    out.require(tampered_rc == 1, "cli tampered witness exits 1");

    // Tamper with the witness stored in the cache, keeping its hash consistent.
    nlohmann::json doc;
    {
      std::ifstream in(*cfg.cache);
      doc = nlohmann::json::parse(in);
    }
    auto& entry = doc["entries"]["3,2"];
    for (auto& x : entry["certificate"]["witness"])
      if (x.get<std::string>().front() == '-') {
        x = "1";
        break;
      }
    entry["hash"] = content_hash(entry["certificate"]);
    {
      std::ofstream o(*cfg.cache);
      o << doc.dump(1);
    }
    const auto tampered = reproduce(cfg);
    bool flipped = false;
    for (const auto& row : tampered.rows)
      if (row.label == "R(3,2)") flipped = row.status == "fail";
    out.require(flipped && !tampered.ok(), "cached witness tamper flips R(3,2)");
    const int cache_rc = run_cli(cli, "--cache \"" + cfg.cache->string() + "\" reproduce", scratch / "reproduce-cache.csv");
    out.detail << ", tampered cache exit " << cache_rc;
    out.require(cache_rc == 1, "cli tampered cache exits 1");
  });

  std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
