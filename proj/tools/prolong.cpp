// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 search budget exhausted before completion.

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prolong/cache.hpp"
#include "prolong/certify.hpp"
#include "prolong/combinatorics.hpp"
#include "prolong/lemmas.hpp"
#include "prolong/reproduce.hpp"
#include "prolong/search.hpp"
#include "prolong/witnesses.hpp"

namespace {

using nlohmann::json;
using namespace prolong;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kIncomplete = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string cache;
  std::string format;  // empty: the command's default
};

std::string output_format(const Globals& g, const std::string& fallback) {
  const std::string f = g.format.empty() ? fallback : g.format;
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
  return f;
}

json big_json(const BigInt& v) {
  if (v.fits_ulong_p()) return json(v.get_ui());
  return json(v.get_str());
}

json exponents_json(const MultiIndex& mi) { return mi.exponents(); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json read_json_arg(const std::string& text) {
  // Inline JSON, or @path to read a file.
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw UsageError("cannot read " + text.substr(1));
    return json::parse(in);
  }
  return json::parse(text);
}

// ---------------------------------------------------------------------------

int cmd_matrix(unsigned n, unsigned d, const std::string& layout, bool check_recursive) {
  if (n < 1) throw UsageError("--n must be >= 1");
  if (layout != "triplet" && layout != "dense") throw UsageError("matrix --format must be triplet or dense");
  const ProlongMatrix J = build_direct(n, d);
  std::ostringstream out;
  if (layout == "triplet") {
    out << J.rows() << ' ' << J.cols() << ' ' << J.nnz() << '\n';
    for (const auto& e : J.entries()) out << e.row << ' ' << e.col << " 1\n";
  } else {
    for (std::size_t r = 0; r < J.rows(); ++r) {
      std::vector<char> line(J.cols(), '0');
      for (std::size_t c : J.row(r)) line[c] = '1';
      for (std::size_t c = 0; c < J.cols(); ++c) out << (c ? " " : "") << line[c];
      out << '\n';
    }
  }
  std::cout << out.str();
  if (check_recursive) {
    const bool same = build_recursive(n, d) == J;
    std::cerr << "recursive construction: " << (same ? "identical" : "MISMATCH") << '\n';
    if (!same) return kVerifyFailed;
  }
  return kOk;
}

int cmd_basis(const Globals& g, unsigned n, unsigned d) {
  if (n < 1) throw UsageError("--n must be >= 1");
  const auto basis = lex_basis(n, d);
  if (output_format(g, "json") == "csv") {
    std::cout << "index";
    for (unsigned j = 1; j <= n; ++j) std::cout << ",x" << j;
    std::cout << '\n';
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::cout << i;
      for (unsigned e : basis[i].exponents()) std::cout << ',' << e;
      std::cout << '\n';
    }
  } else {
    json arr = json::array();
    for (const auto& mi : basis) arr.push_back(exponents_json(mi));
    std::cout << arr.dump() << '\n';
  }
  return kOk;
}

int cmd_shadow(const std::string& space_text) {
  const json in = read_json_arg(space_text);
  if (!in.is_array() || in.empty()) throw UsageError("--space must be a nonempty JSON array of exponent vectors");
  std::vector<MultiIndex> members;
  for (const auto& e : in) members.emplace_back(e.get<std::vector<unsigned>>());
  const unsigned n = static_cast<unsigned>(members.front().variables());
  const unsigned d = members.front().degree();
  for (const auto& m : members)
    if (m.variables() != n || m.degree() != d) throw UsageError("all monomials must share n and d");
  const MonomialSpace space(n, d, members);
  const MonomialSpace sh = shadow(space);
  json out_members = json::array();
  for (const auto& m : sh.members()) out_members.push_back(exponents_json(m));
  const json out = {{"n", n},
                    {"d", d},
                    {"codim", codim(space)},
                    {"shadow", out_members},
                    {"shadow_codim", codim(sh)},
                    {"bound", big_json(macaulay_step(BigInt(static_cast<unsigned long>(codim(space))), d))}};
  std::cout << out.dump() << '\n';
  return kOk;
}

int cmd_macaulay(const std::string& value, unsigned d) {
  if (d < 1) throw UsageError("--d must be >= 1");
  BigInt v;
  if (v.set_str(value, 10) != 0 || v < 0) throw UsageError("--N must be a nonnegative integer");
  const MacaulayRep rep = macaulay_rep(v, d);
  json terms = json::array();
  for (const auto& t : rep.terms) terms.push_back({big_json(t.top), t.bottom});
  std::cout << json{{"N", big_json(v)}, {"d", d}, {"terms", terms}, {"step", big_json(macaulay_step(v, d))}}.dump()
            << '\n';
  return kOk;
}

std::vector<CoeffVector> parse_polynomial(const json& in) {
  const unsigned n = in.at("n").get<unsigned>();
  std::vector<CoeffVector> parts;
  for (const auto& p : in.at("parts")) {
    RationalVector coeffs;
    for (const auto& c : p.at("coeffs")) {
      if (c.is_string()) {
        coeffs.push_back(parse_rational(c.get<std::string>()));
      } else if (c.is_number_integer()) {
        coeffs.emplace_back(c.get<long>());
      } else {
        throw UsageError("coefficients must be rational strings or integers");
      }
    }
    parts.emplace_back(n, p.at("d").get<unsigned>(), std::move(coeffs));
  }
  return parts;
}

int cmd_certify(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  const json doc = json::parse(in);
  const auto parts = parse_polynomial(doc);
  const CertReport rep = certify_polynomial(parts);
  std::cout << to_json(rep).dump(2) << '\n';
  return rep.floor_violation ? kVerifyFailed : kOk;
}

struct RndArgs {
  unsigned n = 2;
  unsigned d = 2;
  std::uint64_t budget_nodes = 50'000'000;
  double budget_secs = 3600.0;
  bool no_symmetry = false;
  bool use_floors = false;
  std::string out;
};

int cmd_rnd(const Globals& g, const RndArgs& a) {
  std::optional<ResultsCache> cache;
  if (!g.cache.empty()) cache.emplace(g.cache);
  std::optional<RndCertificate> cert;
  bool from_cache = false;
  if (cache && cache->contains(a.n, a.d)) {
    std::string problem;
    cert = cache->get(a.n, a.d, &problem);
    if (cert) {
      from_cache = true;
    } else {
      std::cerr << "cache entry (" << a.n << "," << a.d << ") rejected: " << problem << "; recomputing\n";
    }
  }
  if (!cert) {
    SearchConfig sc;
    sc.n = a.n;
    sc.d = a.d;
    sc.node_budget = a.budget_nodes;
    sc.time_budget_secs = a.budget_secs;
    sc.use_symmetry = !a.no_symmetry;
    sc.seed_floors = a.use_floors;
    cert = compute_rnd(sc);
    std::cerr << "search: " << cert->stats.nodes << " nodes, " << cert->stats.lp_solves << " LP solves, "
              << cert->stats.elapsed_secs << " s\n";
  }
  std::string why;
  if (!verify_certificate(*cert, &why, a.use_floors)) {
    std::cerr << "certificate failed verification: " << why << '\n';
    return kVerifyFailed;
  }
  if (cache && !from_cache && cert->complete && !cert->uses_floors) {
    cache->put(*cert);
    cache->save();
  }
  const json body = to_json(*cert);
  if (!a.out.empty()) write_file(a.out, body.dump(2) + "\n");
  json summary = {{"n", cert->n},         {"d", cert->d},
                  {"complete", cert->complete}, {"empty", cert->empty},
                  {"value", body.at("value")},  {"lower_bound", cert->lower_bound},
                  {"upper_bound", body.at("upper_bound")}, {"witness", body.at("witness")},
                  {"nodes", cert->stats.nodes}, {"from_cache", from_cache}};
  if (output_format(g, "json") == "csv") {
    std::cout << "n,d,complete,value,lower_bound,upper_bound\n"
              << cert->n << ',' << cert->d << ',' << cert->complete << ','
              << (cert->value() ? std::to_string(*cert->value()) : "") << ',' << cert->lower_bound << ','
              << (cert->upper_bound ? std::to_string(*cert->upper_bound) : "") << '\n';
  } else {
    std::cout << summary.dump(2) << '\n';
  }
  return cert->complete ? kOk : kIncomplete;
}

int cmd_verify_lemmas(const Globals& g, const std::string& lemma, unsigned n_max, std::uint64_t trials,
                      const std::string& out_path) {
  SuiteConfig cfg;
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  cfg.n_max = n_max;
  cfg.trials = trials;
  std::vector<std::string> ids;
  if (lemma == "all") {
    ids = lemma_ids();
  } else {
    const auto all = lemma_ids();
    if (std::find(all.begin(), all.end(), lemma) == all.end()) throw UsageError("unknown lemma id '" + lemma + "'");
    ids.push_back(lemma);
  }
  json reports = json::array();
  bool clean = true;
  const bool csv = output_format(g, "json") == "csv";
  if (csv) std::cout << "id,trials,conforming,violations,tight,worst_slack\n";
  for (const auto& id : ids) {
    const LemmaReport r = run_lemma(id, cfg);
    clean = clean && r.passed();
    reports.push_back(to_json(r));
    if (csv) {
      std::cout << r.id << ',' << r.trials << ',' << r.conforming << ',' << r.violations << ',' << r.tight << ','
                << (r.worst_slack ? std::to_string(*r.worst_slack) : "") << '\n';
    }
  }
  const json doc = {{"seed", g.seed}, {"reports", reports}, {"violations_total", clean ? 0 : 1}};
  if (!csv) std::cout << doc.dump(2) << '\n';
  if (!out_path.empty()) write_file(out_path, doc.dump(2) + "\n");
  return clean ? kOk : kVerifyFailed;
}

int cmd_examples(const std::string& name, bool flip_signs) {
  auto h = named_witness(name);
  if (!h) throw UsageError("unknown example '" + name + "' (expected f or g)");
  if (flip_signs) h = Rational(-1) * *h;
  const CoeffVector parts[] = {*h};
  const CertReport rep = certify_polynomial(parts);
  const std::size_t expected = name == "f" ? 5 : 8;
  const DegreeCert& c = rep.parts.front();
  bool ok;
  json out = to_json(rep);
  if (flip_signs) {
    ok = !c.prolong_sos;  // negative control
    out["control"] = ok ? "rejected as expected" : "unexpectedly accepted";
  } else {
    ok = !c.is_sos && c.prolong_sos && c.rank == expected;
    out["expected_rank"] = expected;
  }
  out["check"] = ok ? "pass" : "fail";
  std::cout << out.dump(2) << '\n';
  return ok ? kOk : kVerifyFailed;
}

int cmd_reproduce(const Globals& g, double budget_secs, const std::vector<std::string>& overrides) {
  ReproduceConfig cfg;
  cfg.bracket_budget_secs = budget_secs;
  if (!g.cache.empty()) cfg.cache = g.cache;
  for (const auto& item : overrides) {
    // name=c0,c1,...
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--witness expects name=c0,c1,...");
    const std::string name = item.substr(0, eq);
    const auto base = named_witness(name);
    if (!base) throw UsageError("unknown witness '" + name + "'");
    std::vector<std::string> fields;
    std::stringstream ss(item.substr(eq + 1));
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    cfg.witness_overrides.emplace(name, CoeffVector(base->n(), base->d(), parse_rationals(fields)));
  }
  const ReproduceTable table = reproduce(cfg);
  if (output_format(g, "csv") == "csv") {
    std::cout << to_csv(table);
  } else {
    std::cout << to_json(table).dump(2) << '\n';
  }
  if (!table.ok()) return kVerifyFailed;
  return table.any_incomplete() ? kIncomplete : kOk;
}

int cmd_bands(const Globals& g, unsigned n, std::optional<std::uint64_t> rank) {
  const ConjectureBands b = conjecture_bands(n);
  if (output_format(g, "json") == "csv") {
    std::cout << "kappa,low,high\n";
    for (const auto& band : b.bands) std::cout << band.kappa << ',' << band.low << ',' << band.high << '\n';
    std::cout << "threshold,," << b.threshold << '\n';
    return kOk;
  }
  json bands = json::array();
  for (const auto& band : b.bands) bands.push_back({{"kappa", band.kappa}, {"low", band.low}, {"high", band.high}});
  json out = {{"n", n}, {"kappa0", b.kappa0}, {"bands", bands}, {"threshold", b.threshold}};
  if (rank) {
    const BandVerdict v = classify_rank(b, *rank);
    out["rank"] = *rank;
    out["class"] = to_string(v.kind);
    if (v.kappa) out["kappa"] = *v.kappa;
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prolongation ranks of diagonal Hermitian forms: exact search, certificates and inequality checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; subcommand keys as <command>.<option>=value");

  Globals g;
  app.add_option("--threads", g.threads, "Worker threads for trial-parallel work")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--cache", g.cache, "Results cache file");
  app.add_option("--format", g.format, "Output format: json or csv (matrix: triplet or dense)");

  unsigned n = 2, d = 2;
  std::function<int()> run;

  auto* matrix = app.add_subcommand("matrix", "Print the prolongation matrix");
  std::string layout = "triplet";
  bool check_recursive = false;
  matrix->add_option("--n", n)->required();
  matrix->add_option("--d", d)->required();
  matrix->add_option("--format", layout, "triplet or dense");
  matrix->add_flag("--check-recursive", check_recursive, "Compare with the block-recursive construction");
  matrix->callback([&] { run = [&] { return cmd_matrix(n, d, layout, check_recursive); }; });

  auto* basis = app.add_subcommand("basis", "List degree-d monomials in lex order");
  basis->add_option("--n", n)->required();
  basis->add_option("--d", d)->required();
  basis->callback([&] { run = [&] { return cmd_basis(g, n, d); }; });

  auto* shadow_cmd = app.add_subcommand("shadow", "Shadow of a monomial space");
  std::string space_text;
  shadow_cmd->add_option("--space", space_text, "JSON array of exponent vectors, or @file")->required();
  shadow_cmd->callback([&] { run = [&] { return cmd_shadow(space_text); }; });

  auto* macaulay = app.add_subcommand("macaulay", "Macaulay representation and growth bound");
  std::string big_n;
  macaulay->add_option("--N", big_n)->required();
  macaulay->add_option("--d", d)->required();
  macaulay->callback([&] { run = [&] { return cmd_macaulay(big_n, d); }; });

  auto* certify = app.add_subcommand("certify", "Certify a polynomial given by diagonal coefficient vectors");
  std::string input;
  certify->add_option("--input", input, "JSON file")->required();
  certify->callback([&] { run = [&] { return cmd_certify(input); }; });

  auto* rnd = app.add_subcommand("rnd", "Exact minimal prolongation rank with certificate");
  RndArgs ra;
  rnd->add_option("--n", ra.n)->required();
  rnd->add_option("--d", ra.d)->required();
  rnd->add_option("--budget-nodes", ra.budget_nodes)->check(CLI::PositiveNumber);
  rnd->add_option("--budget-secs", ra.budget_secs)->check(CLI::PositiveNumber);
  rnd->add_flag("--no-symmetry", ra.no_symmetry, "Branch on every negative column, not one per orbit");
  rnd->add_flag("--use-floors", ra.use_floors, "Stop early at the known rank floors (certificate not self-contained)");
  rnd->add_option("--out", ra.out, "Certificate output file");
  rnd->callback([&] { run = [&] { return cmd_rnd(g, ra); }; });

  auto* lemmas = app.add_subcommand("verify-lemmas", "Run the inequality checks");
  std::string lemma = "all", lemma_out;
  unsigned n_max = 0;
  std::uint64_t trials = 0;
  lemmas->add_option("--lemma", lemma, "Check id or 'all'");
  lemmas->add_option("--n-max", n_max, "Cap on the number of variables");
  lemmas->add_option("--trials", trials, "Random trials per parameter cell");
  lemmas->add_option("--out", lemma_out, "Report output file");
  lemmas->callback([&] { run = [&] { return cmd_verify_lemmas(g, lemma, n_max, trials, lemma_out); }; });

  auto* examples = app.add_subcommand("examples", "Certify a stored extremal witness");
  std::string example;
  bool flip = false;
  examples->add_option("name", example, "f or g")->required();
  examples->add_flag("--flip-signs", flip, "Negate the witness (negative control)");
  examples->callback([&] { run = [&] { return cmd_examples(example, flip); }; });

  auto* repro = app.add_subcommand("reproduce", "Regenerate the table of minimal ranks and witnesses");
  double repro_budget = 3600.0;
  std::vector<std::string> overrides;
  repro->add_option("--budget-secs", repro_budget, "Time budget for the (5,2) search")->check(CLI::PositiveNumber);
  repro->add_option("--witness", overrides, "Replace a stored witness: name=c0,c1,...");
  repro->callback([&] { run = [&] { return cmd_reproduce(g, repro_budget, overrides); }; });

  auto* bands = app.add_subcommand("bands", "Conjectured rank bands for n variables");
  std::optional<std::uint64_t> rank;
  bands->add_option("--n", n)->required();
  bands->add_option("--rank", rank, "Classify this rank");
  bands->callback([&] { run = [&] { return cmd_bands(g, n, rank); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
}
