#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "prolong/monomials.hpp"
#include "prolong/prolongation.hpp"

namespace prolong {

/// Outcome of one inequality check, or of many merged together.
/// Slack is (bound side) - (measured side), so a violation has negative slack.
struct LemmaReport {
  std::string id;
  std::uint64_t trials = 0;      // instances drawn or enumerated
  std::uint64_t conforming = 0;  // instances meeting the hypothesis, i.e. actually checked
  std::uint64_t violations = 0;
  std::uint64_t tight = 0;       // conforming instances with zero slack
  std::optional<long long> worst_slack;
  std::uint64_t seed = 0;
  nlohmann::json ranges = nlohmann::json::object();
  /// Replayable inputs of violating instances (at most max_counterexamples kept).
  std::vector<nlohmann::json> counterexamples;

  static constexpr std::size_t max_counterexamples = 16;

  bool passed() const { return violations == 0; }
  /// Records one conforming instance; `ok` false or negative slack counts as a violation.
  void record(long long slack, bool ok, const nlohmann::json& instance);
  /// Sums counts, keeps the smaller slack, concatenates counterexamples.
  void merge(const LemmaReport& other);
};

nlohmann::json to_json(const LemmaReport& report);

/// The constant in the second-prolongation zero bound: 1, 2, 4 for n = 2, 3, 4 and 10 - n beyond.
long long second_prolongation_constant(unsigned n);

// Single-instance checks. Each returns a report with one trial. Precondition failures
// throw std::invalid_argument.

/// a has length n (a linear form). P(Ja) >= P(P+1)/2 + PZ, N(Ja) >= N(N+1)/2 + NZ,
/// Z(Ja) <= Z(Z+1)/2 + PN, with equality throughout when PN = 0.
LemmaReport check_first_prolongation(std::span<const Rational> a, unsigned n);

/// Z(J_{n,2} J_{n,1} a) <= C(n+1,3) - n N(a) + n + c(n). Requires N(a) >= 2 and n >= 2.
LemmaReport check_second_prolongation(std::span<const Rational> a, unsigned n);

/// For h >= 0 with k = R(h): nk - k(k-1)/2 <= R(Jh) <= nk if k <= n-1, R(Jh) >= n(n+1)/2 otherwise.
LemmaReport check_ghp(const CoeffVector& h);

/// |supp(A (x_1 + ... + x_r - x_{r+1} - ... - x_{r+s}))| >= r + s for nonzero A, 1 <= r+s <= n.
LemmaReport check_gao_ng(const CoeffVector& h, unsigned r, unsigned s);

/// codim(shadow) <= codim^<d>, with equality on lex segments.
LemmaReport check_macaulay(const MonomialSpace& space);

/// R(Jh) equals the sum of the slack-block ranks plus the tail rank, and
/// Jh >= 0 holds exactly when every slack block and the tail are nonnegative.
LemmaReport check_block_identity(const CoeffVector& h);

/// d = 2, n >= 3, Jh >= 0 and the x_1-free block not >= 0: P(h_1) >= 1, both middle slack
/// blocks nonzero, and R(Jh) >= 3 + r_prev when the minimal rank r_prev for n-1 is supplied.
LemmaReport check_structural(const CoeffVector& h, std::optional<std::size_t> r_prev = std::nullopt);

/// n, d >= 2, Jh >= 0, h not >= 0 and exactly one nonzero slack block:
/// R(Jh) >= C(n+1,3) + 1.
LemmaReport check_single_slack_block(const CoeffVector& h);

/// Rank-1 nonnegative u (degree a) and w (degree b), a < b <= d, n, d >= 2, with
/// v = (-1)^{d-a} S^{d-a+1} u + (-1)^{d-b} S^{d-b+1} w >= 0: R(v) >= C(n+2,3) - 1.
LemmaReport check_two_block_combination(const CoeffVector& u, const CoeffVector& w, unsigned d);

/// N(h) = 1 and Jh >= 0: R(Jh) >= n(n+1)/2 - 1.
LemmaReport check_single_negative(const CoeffVector& h);

/// n >= 4, d >= 2, blocks 1..d-2 and d nonnegative, P(h_d) = N(h_{d-1}) = 2, Jh >= 0:
/// R(Jh) >= 3n - 4.
LemmaReport check_sign_pattern_floor(const CoeffVector& h);

/// Seeded suite over exhaustive small cases and random trials.
struct SuiteConfig {
  std::uint64_t seed = 1;
  /// Caps the number of variables; 0 keeps each check's default range.
  unsigned n_max = 0;
  /// Random trials per parameter cell; 0 keeps each check's default.
  std::uint64_t trials = 0;
  unsigned threads = 1;
};

/// Identifiers accepted by run_lemma, in suite order.
std::vector<std::string> lemma_ids();

/// Throws std::invalid_argument for an unknown id.
LemmaReport run_lemma(const std::string& id, const SuiteConfig& config);

}  // namespace prolong
