#include "prolong/lemmas.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "prolong/combinatorics.hpp"
#include "prolong/counting.hpp"
#include "prolong/ratlp.hpp"
#include "prolong/search.hpp"

namespace prolong {

void LemmaReport::record(long long slack, bool ok, const nlohmann::json& instance) {
  ++conforming;
  if (!worst_slack || slack < *worst_slack) worst_slack = slack;
  if (slack == 0) ++tight;
  if (!ok || slack < 0) {
    ++violations;
    if (counterexamples.size() < max_counterexamples) counterexamples.push_back(instance);
  }
}

void LemmaReport::merge(const LemmaReport& other) {
  trials += other.trials;
  conforming += other.conforming;
  violations += other.violations;
  tight += other.tight;
  if (other.worst_slack && (!worst_slack || *other.worst_slack < *worst_slack)) worst_slack = other.worst_slack;
  for (const auto& c : other.counterexamples)
    if (counterexamples.size() < max_counterexamples) counterexamples.push_back(c);
}

nlohmann::json to_json(const LemmaReport& r) {
  nlohmann::json j = {{"id", r.id},           {"trials", r.trials}, {"conforming", r.conforming},
                      {"violations", r.violations}, {"tight", r.tight}, {"seed", r.seed},
                      {"ranges", r.ranges},   {"counterexamples", r.counterexamples}};
  j["worst_slack"] = r.worst_slack ? nlohmann::json(*r.worst_slack) : nlohmann::json(nullptr);
  return j;
}

long long second_prolongation_constant(unsigned n) {
  switch (n) {
    case 2: return 1;
    case 3: return 2;
    case 4: return 4;
    default: break;
  }
  if (n < 2) throw std::invalid_argument("second_prolongation_constant: n must be >= 2");
  return 10 - static_cast<long long>(n);
}

namespace {

using json = nlohmann::json;
using Rng = std::mt19937_64;

long long as_ll(std::size_t v) { return static_cast<long long>(v); }

json vec_json(std::span<const Rational> v) { return to_strings(v); }

json coeff_json(const CoeffVector& h) { return {{"n", h.n()}, {"d", h.d()}, {"h", vec_json(h.view())}}; }

LemmaReport single(const std::string& id) {
  LemmaReport r;
  r.id = id;
  r.trials = 1;
  return r;
}

std::vector<std::size_t> block_offsets(unsigned n, unsigned d) {
  std::vector<std::size_t> off{0};
  for (unsigned j = 0; j <= d; ++j) off.push_back(off.back() + basis_size(n - 1, j));
  return off;
}

CoeffVector concat_blocks(unsigned n, unsigned d, const std::vector<CoeffVector>& blocks) {
  RationalVector v;
  for (const auto& b : blocks) v.insert(v.end(), b.entries().begin(), b.entries().end());
  return CoeffVector(n, d, std::move(v));
}

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

LemmaReport check_first_prolongation(std::span<const Rational> a, unsigned n) {
  require(n >= 1 && a.size() == n, "check_first_prolongation: a must have length n");
  LemmaReport r = single("first-prolongation");
  const auto in = profile(a);
  const auto out = profile(prolong_matrix(n, 1)->multiply(a));
  const long long P = as_ll(in.positive), N = as_ll(in.negative), Z = as_ll(in.zero);
  const long long sp = as_ll(out.positive) - (P * (P + 1) / 2 + P * Z);
  const long long sn = as_ll(out.negative) - (N * (N + 1) / 2 + N * Z);
  const long long sz = (Z * (Z + 1) / 2 + P * N) - as_ll(out.zero);
  const bool equal_when_unmixed = P * N != 0 || (sp == 0 && sn == 0 && sz == 0);
  r.record(std::min({sp, sn, sz}), equal_when_unmixed, {{"n", n}, {"a", vec_json(a)}});
  return r;
}

LemmaReport check_second_prolongation(std::span<const Rational> a, unsigned n) {
  require(n >= 2 && a.size() == n, "check_second_prolongation: a must have length n >= 2");
  const auto in = profile(a);
  require(in.negative >= 2, "check_second_prolongation: needs at least two negative entries");
  LemmaReport r = single("second-prolongation");
  const CoeffVector out = iterated_apply(n, 1, 3, CoeffVector(n, 1, RationalVector(a.begin(), a.end())));
  const long long z = as_ll(profile(out.view()).zero);
  const long long bound = binomial(n + 1, 3).get_si() - as_ll(n) * as_ll(in.negative) + n +
                          second_prolongation_constant(n);
  r.record(bound - z, true, {{"n", n}, {"a", vec_json(a)}});
  return r;
}

LemmaReport check_ghp(const CoeffVector& h) {
  require(is_nonnegative(h.view()), "check_ghp: h must be nonnegative");
  LemmaReport r = single("ghp-sandwich");
  const long long n = h.n();
  const long long k = as_ll(rank_of(h.view()));
  const long long R = as_ll(rank_of(apply(h).view()));
  long long slack;
  if (k <= n - 1) {
    slack = std::min(R - (n * k - k * (k - 1) / 2), n * k - R);
  } else {
    slack = R - n * (n + 1) / 2;
  }
  r.record(slack, true, coeff_json(h));
  return r;
}

LemmaReport check_gao_ng(const CoeffVector& h, unsigned r_plus, unsigned s_minus) {
  require(!h.is_zero(), "check_gao_ng: h must be nonzero");
  require(r_plus + s_minus >= 1 && r_plus + s_minus <= h.n(), "check_gao_ng: need 1 <= r + s <= n");
  LemmaReport r = single("gao-ng-support");
  const unsigned n = h.n();
  const auto basis = lex_basis(n, h.d());
  RationalVector product(basis_size(n, h.d() + 1));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    if (h[c] == 0) continue;
    for (unsigned j = 0; j < r_plus + s_minus; ++j) {
      const std::size_t row = index_of(basis[c].times_variable(j));
      if (j < r_plus) {
        product[row] += h[c];
      } else {
        product[row] -= h[c];
      }
    }
  }
  json inst = coeff_json(h);
  inst["r"] = r_plus;
  inst["s"] = s_minus;
  r.record(as_ll(rank_of(product)) - as_ll(r_plus + s_minus), true, inst);
  return r;
}

LemmaReport check_macaulay(const MonomialSpace& space) {
  LemmaReport r = single("macaulay-shadow");
  const std::size_t c = codim(space);
  const std::size_t cs = codim(shadow(space));
  const long long bound = macaulay_step(BigInt(static_cast<unsigned long>(c)), space.d()).get_si();
  const bool is_lex = space == lex_segment(space.n(), space.d(), space.size());
  const long long slack = bound - as_ll(cs);
  const std::vector<std::size_t> members(space.positions().begin(), space.positions().end());
  r.record(slack, !is_lex || slack == 0, {{"n", space.n()}, {"d", space.d()}, {"positions", members}});
  return r;
}

LemmaReport check_block_identity(const CoeffVector& h) {
  require(h.n() >= 2, "check_block_identity: n must be >= 2");
  LemmaReport r = single("block-identity");
  const GammaDecomp g = decompose(h);
  const RationalVector jh = apply(h).entries();
  std::size_t sum = rank_of(g.tail.view());
  bool parts_nonneg = is_nonnegative(g.tail.view());
  for (const auto& s : g.slacks) {
    sum += rank_of(s.view());
    parts_nonneg = parts_nonneg && is_nonnegative(s.view());
  }
  const bool ok = sum == rank_of(jh) && parts_nonneg == is_nonnegative(jh);
  r.record(0, ok, coeff_json(h));
  return r;
}

LemmaReport check_structural(const CoeffVector& h, std::optional<std::size_t> r_prev) {
  require(h.n() >= 3 && h.d() == 2, "check_structural: needs n >= 3 and d = 2");
  const RationalVector jh = apply(h).entries();
  require(is_nonnegative(jh), "check_structural: Jh must be nonnegative");
  const GammaDecomp g = decompose(h);
  require(!is_nonnegative(g.blocks[2].view()), "check_structural: the x_1-free block must have a negative entry");
  LemmaReport r = single("structural-d2");
  long long slack = std::min({as_ll(profile(g.blocks[1].view()).positive) - 1, as_ll(rank_of(g.slacks[1].view())) - 1,
                              as_ll(rank_of(g.slacks[2].view())) - 1});
  if (r_prev) slack = std::min(slack, as_ll(rank_of(jh)) - 3 - as_ll(*r_prev));
  json inst = coeff_json(h);
  if (r_prev) inst["r_prev"] = *r_prev;
  r.record(slack, true, inst);
  return r;
}

LemmaReport check_single_slack_block(const CoeffVector& h) {
  require(h.n() >= 2 && h.d() >= 2, "check_single_slack_block: needs n, d >= 2");
  const RationalVector jh = apply(h).entries();
  require(is_nonnegative(jh) && !is_nonnegative(h.view()), "check_single_slack_block: needs Jh >= 0 and h not >= 0");
  const GammaDecomp g = decompose(h);
  const auto nonzero = std::count_if(g.slacks.begin(), g.slacks.end(), [](const CoeffVector& s) { return !s.is_zero(); });
  require(nonzero == 1, "check_single_slack_block: exactly one slack block must be nonzero");
  LemmaReport r = single("single-slack-block");
  const long long bound = binomial(h.n() + 1, 3).get_si() + 1;
  r.record(as_ll(rank_of(jh)) - bound, true, coeff_json(h));
  return r;
}

LemmaReport check_two_block_combination(const CoeffVector& u, const CoeffVector& w, unsigned d) {
  const unsigned n = u.n();
  require(n >= 2 && d >= 2 && w.n() == n, "check_two_block_combination: needs n, d >= 2");
  require(u.d() < w.d() && w.d() <= d, "check_two_block_combination: needs deg u < deg w <= d");
  require(is_nonnegative(u.view()) && is_nonnegative(w.view()) && rank_of(u.view()) == 1 && rank_of(w.view()) == 1,
          "check_two_block_combination: blocks must be nonnegative of rank 1");
  const CoeffVector pu = iterated_apply(n, u.d(), d + 1, u);
  const CoeffVector pw = iterated_apply(n, w.d(), d + 1, w);
  const Rational su = (d - u.d()) % 2 == 0 ? 1 : -1;
  const Rational sw = (d - w.d()) % 2 == 0 ? 1 : -1;
  const CoeffVector v = su * pu + sw * pw;
  require(is_nonnegative(v.view()), "check_two_block_combination: combination must be nonnegative");
  LemmaReport r = single("two-block-combination");
  const long long bound = binomial(n + 2, 3).get_si() - 1;
  r.record(as_ll(rank_of(v.view())) - bound, true,
           {{"n", n}, {"d", d}, {"u", coeff_json(u)}, {"w", coeff_json(w)}});
  return r;
}

LemmaReport check_single_negative(const CoeffVector& h) {
  require(profile(h.view()).negative == 1, "check_single_negative: needs exactly one negative entry");
  const RationalVector jh = apply(h).entries();
  require(is_nonnegative(jh), "check_single_negative: Jh must be nonnegative");
  LemmaReport r = single("single-negative");
  const long long n = h.n();
  r.record(as_ll(rank_of(jh)) - (n * (n + 1) / 2 - 1), true, coeff_json(h));
  return r;
}

LemmaReport check_sign_pattern_floor(const CoeffVector& h) {
  const unsigned n = h.n();
  const unsigned d = h.d();
  require(n >= 4 && d >= 2, "check_sign_pattern_floor: needs n >= 4 and d >= 2");
  const GammaDecomp g = decompose(h);
  for (unsigned i = 1; i + 2 <= d; ++i)
    require(is_nonnegative(g.blocks[i].view()), "check_sign_pattern_floor: blocks 1..d-2 must be nonnegative");
  const auto last = profile(g.blocks[d].view());
  require(last.negative == 0 && last.positive == 2, "check_sign_pattern_floor: last block needs two positive entries");
  require(profile(g.blocks[d - 1].view()).negative == 2, "check_sign_pattern_floor: block d-1 needs two negatives");
  const RationalVector jh = apply(h).entries();
  require(is_nonnegative(jh), "check_sign_pattern_floor: Jh must be nonnegative");
  LemmaReport r = single("sign-pattern-floor");
  r.record(as_ll(rank_of(jh)) - (3 * as_ll(n) - 4), true, coeff_json(h));
  return r;
}

// ---------------------------------------------------------------------------
// Suite

namespace {

struct Cell {
  unsigned n = 0;
  unsigned d = 0;
  unsigned r = 0;
  unsigned s = 0;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Rng rng_for(std::uint64_t seed, const std::string& id, std::size_t cell, std::uint64_t trial) {
  const std::uint64_t idh = fnv1a(id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(idh), static_cast<std::uint32_t>(idh >> 32),
                    static_cast<std::uint32_t>(cell), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

using TrialFn = std::function<void(const Cell&, Rng&, LemmaReport&)>;

// Runs trials_per_cell seeded trials in every cell. Trials are split into contiguous
// ranges per worker and merged in order, so the report does not depend on thread count.
LemmaReport run_trials(const std::string& id, const SuiteConfig& cfg, const std::vector<Cell>& cells,
                       std::uint64_t trials_per_cell, const TrialFn& fn) {
  const std::uint64_t total = cells.size() * trials_per_cell;
  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(cfg.threads, total)));
  std::vector<LemmaReport> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
      for (std::uint64_t i = lo; i < hi; ++i) {
        const std::size_t c = i / trials_per_cell;
        Rng rng = rng_for(cfg.seed, id, c, i % trials_per_cell);
        ++parts[w].trials;
        fn(cells[c], rng, parts[w]);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  LemmaReport out;
  out.id = id;
  for (unsigned w = 0; w < workers; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
    out.merge(parts[w]);
  }
  return out;
}

// Copies the verdict of a single check into an aggregate (trial already counted).
void absorb(LemmaReport& into, const LemmaReport& one) {
  LemmaReport c = one;
  c.trials = 0;
  into.merge(c);
}

const std::vector<Rational>& magnitudes() {
  static const std::vector<Rational> m{Rational(1), Rational(1, 2), Rational(2), Rational(3)};
  return m;
}

const std::vector<Rational>& signed_grid() {
  static const std::vector<Rational> g = [] {
    std::vector<Rational> v{Rational(0)};
    for (const auto& m : magnitudes()) {
      v.push_back(m);
      v.push_back(-m);
    }
    return v;
  }();
  return g;
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Rational magnitude(Rng& rng) { return magnitudes()[uniform(rng, 0, magnitudes().size() - 1)]; }

// Random positive rational p/q with small p, q: wider than the grid.
Rational small_positive(Rng& rng) { return Rational(static_cast<long>(uniform(rng, 1, 9)), static_cast<long>(uniform(rng, 1, 4))); }

Rational grid_value(Rng& rng) { return signed_grid()[uniform(rng, 0, signed_grid().size() - 1)]; }

RationalVector random_signed_vector(Rng& rng, std::size_t len) {
  RationalVector v(len);
  const double zero_p = std::uniform_real_distribution<double>(0.0, 0.8)(rng);
  for (auto& x : v) {
    if (coin(rng, zero_p)) continue;
    x = coin(rng, 0.5) ? small_positive(rng) : Rational(-small_positive(rng));
  }
  return v;
}

std::vector<std::size_t> random_subset(Rng& rng, std::size_t universe, std::size_t k) {
  std::vector<std::size_t> idx(universe);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min(k, universe));
  std::sort(idx.begin(), idx.end());
  return idx;
}

CoeffVector random_nonneg(Rng& rng, unsigned n, unsigned d, std::size_t k) {
  CoeffVector h(n, d);
  for (std::size_t i : random_subset(rng, h.size(), k)) h[i] = small_positive(rng);
  return h;
}

// Per-column sign requirements for the cone sampler.
enum class Req { free, nonneg, zero, le_minus_one, ge_one };

// A point of { J h >= 0 } meeting the column requirements. Random extra faces (rows of
// J h pinned to zero, free coordinates pinned to zero or bounded below) spread samples
// over the cone; when they empty the face, half of them and then none are retried.
// nullopt when even the bare requirements are infeasible.
std::optional<CoeffVector> sample_cone(unsigned n, unsigned d, const std::vector<Req>& req, Rng& rng,
                                       bool with_extras = true) {
  const auto J = prolong_matrix(n, d);
  const std::size_t m = J->cols();
  struct Extra {
    bool is_row;
    std::size_t index;
    Relation relation;
    Rational rhs;
  };
  std::vector<Extra> extras;
  const double row_zero_p = std::uniform_real_distribution<double>(0.0, 0.35)(rng);
  const double col_zero_p = std::uniform_real_distribution<double>(0.0, 0.35)(rng);
  for (std::size_t c = 0; c < m && with_extras; ++c) {
    if (req[c] != Req::nonneg) continue;
    if (coin(rng, col_zero_p)) {
      extras.push_back({false, c, Relation::equal, 0});
    } else if (coin(rng, 0.2)) {
      extras.push_back({false, c, Relation::greater_equal, magnitude(rng)});
    }
  }
  for (std::size_t r = 0; r < J->rows() && with_extras; ++r)
    if (coin(rng, row_zero_p)) extras.push_back({true, r, Relation::equal, 0});

  auto attempt = [&](std::size_t keep) -> std::optional<CoeffVector> {
    LinearSystem sys(m);
    for (std::size_t c = 0; c < m; ++c) {
      RationalVector e(m);
      switch (req[c]) {
        case Req::free: continue;
        case Req::nonneg: e[c] = 1; sys.add(std::move(e), Relation::greater_equal, 0); break;
        case Req::zero: e[c] = 1; sys.add(std::move(e), Relation::equal, 0); break;
        case Req::le_minus_one: e[c] = -1; sys.add(std::move(e), Relation::greater_equal, 1); break;
        case Req::ge_one: e[c] = 1; sys.add(std::move(e), Relation::greater_equal, 1); break;
      }
    }
    for (std::size_t r = 0; r < J->rows(); ++r) sys.add_unit_sum(J->row(r), Relation::greater_equal, 0);
    for (std::size_t i = 0; i < keep; ++i) {
      const Extra& x = extras[i];
      if (x.is_row) {
        sys.add_unit_sum(J->row(x.index), x.relation, x.rhs);
      } else {
        RationalVector e(m);
        e[x.index] = 1;
        sys.add(std::move(e), x.relation, x.rhs);
      }
    }
    const FeasResult res = solve_feasibility(sys);
    if (!res.feasible) return std::nullopt;
    return CoeffVector(n, d, res.witness);
  };
  std::shuffle(extras.begin(), extras.end(), rng);
  for (std::size_t keep : {extras.size(), extras.size() / 2, std::size_t{0}}) {
    if (auto h = attempt(keep)) return h;
    if (keep == 0) break;
  }
  return std::nullopt;
}

unsigned cap(const SuiteConfig& cfg, unsigned default_max) {
  return cfg.n_max == 0 ? default_max : std::min(default_max, cfg.n_max);
}

std::uint64_t trials_or(const SuiteConfig& cfg, std::uint64_t fallback) { return cfg.trials == 0 ? fallback : cfg.trials; }

std::vector<Cell> nd_cells(unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi) {
  std::vector<Cell> cells;
  for (unsigned n = n_lo; n <= n_hi; ++n)
    for (unsigned d = d_lo; d <= d_hi; ++d) cells.push_back({n, d, 0, 0});
  return cells;
}

json cell_range(unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi, std::uint64_t trials) {
  return {{"n", {n_lo, n_hi}}, {"d", {d_lo, d_hi}}, {"trials_per_cell", trials}};
}

// Calls fn on every vector in grid^len.
void for_each_grid_vector(std::size_t len, const std::function<void(const RationalVector&)>& fn) {
  const auto& grid = signed_grid();
  std::vector<std::size_t> digit(len, 0);
  RationalVector v(len, grid[0]);
  while (true) {
    fn(v);
    std::size_t i = 0;
    while (i < len && ++digit[i] == grid.size()) {
      digit[i] = 0;
      v[i] = grid[0];
      ++i;
    }
    if (i == len) return;
    v[i] = grid[digit[i]];
  }
}

LemmaReport suite_first_prolongation(const SuiteConfig& cfg) {
  const std::string id = "first-prolongation";
  const unsigned ex_hi = cap(cfg, 4), rnd_hi = cap(cfg, 7);
  const std::uint64_t t = trials_or(cfg, 10'000);
  LemmaReport out;
  out.id = id;
  for (unsigned n = 2; n <= ex_hi; ++n) {
    for_each_grid_vector(n, [&](const RationalVector& a) {
      ++out.trials;
      absorb(out, check_first_prolongation(a, n));
    });
  }
  out.merge(run_trials(id, cfg, nd_cells(2, rnd_hi, 1, 1), t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    RationalVector a(c.n);
    for (auto& x : a) x = grid_value(rng);
    absorb(rep, check_first_prolongation(a, c.n));
  }));
  out.ranges = {{"exhaustive_n", {2, ex_hi}}, {"grid", to_strings(signed_grid())}, {"random", cell_range(2, rnd_hi, 1, 1, t)}};
  return out;
}

LemmaReport suite_second_prolongation(const SuiteConfig& cfg) {
  const std::string id = "second-prolongation";
  const unsigned ex_hi = cap(cfg, 4), rnd_hi = cap(cfg, 6);
  const std::uint64_t t = trials_or(cfg, 10'000);
  LemmaReport out;
  out.id = id;
  for (unsigned n = 2; n <= ex_hi; ++n) {
    for_each_grid_vector(n, [&](const RationalVector& a) {
      ++out.trials;
      if (profile(a).negative >= 2) absorb(out, check_second_prolongation(a, n));
    });
  }
  out.merge(run_trials(id, cfg, nd_cells(2, rnd_hi, 1, 1), t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    // At least two negatives by construction; the rest is drawn from the signed grid.
    RationalVector a(c.n);
    for (auto& x : a) x = grid_value(rng);
    const std::size_t k = uniform(rng, 2, c.n);
    for (std::size_t i : random_subset(rng, c.n, k)) a[i] = -magnitude(rng);
    absorb(rep, check_second_prolongation(a, c.n));
  }));
  out.ranges = {{"exhaustive_n", {2, ex_hi}}, {"random", cell_range(2, rnd_hi, 1, 1, t)}};
  return out;
}

LemmaReport suite_ghp(const SuiteConfig& cfg) {
  const unsigned hi = cap(cfg, 5);
  const std::uint64_t t = trials_or(cfg, 1'000);
  LemmaReport out = run_trials("ghp-sandwich", cfg, nd_cells(2, hi, 2, 4), t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    const std::size_t size = basis_size(c.n, c.d);
    // Alternate between sparse supports (k < n) and dense ones (k >= n).
    const std::size_t k = coin(rng, 0.5) ? uniform(rng, 0, std::min<std::size_t>(c.n - 1, size))
                                         : uniform(rng, std::min<std::size_t>(c.n, size), size);
    absorb(rep, check_ghp(random_nonneg(rng, c.n, c.d, k)));
  });
  out.ranges = cell_range(2, hi, 2, 4, t);
  return out;
}

LemmaReport suite_gao_ng(const SuiteConfig& cfg) {
  const unsigned hi = cap(cfg, 5);
  const std::uint64_t t = trials_or(cfg, 1'000);
  std::vector<Cell> cells;
  for (unsigned n = 2; n <= hi; ++n)
    for (unsigned d = 1; d <= 4; ++d)
      for (unsigned r = 0; r <= n; ++r)
        for (unsigned s = 0; r + s <= n; ++s)
          if (r + s >= 1) cells.push_back({n, d, r, s});
  LemmaReport out = run_trials("gao-ng-support", cfg, cells, t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    CoeffVector h(c.n, c.d, random_signed_vector(rng, basis_size(c.n, c.d)));
    if (h.is_zero()) h[uniform(rng, 0, h.size() - 1)] = magnitude(rng);
    absorb(rep, check_gao_ng(h, c.r, c.s));
  });
  out.ranges = {{"n", {2, hi}}, {"d", {1, 4}}, {"r+s", {1, hi}}, {"trials_per_cell", t}};
  return out;
}

LemmaReport suite_macaulay(const SuiteConfig& cfg) {
  const std::string id = "macaulay-shadow";
  const unsigned hi = cap(cfg, 5);
  const std::uint64_t t = trials_or(cfg, 10'000);
  LemmaReport out;
  out.id = id;
  std::vector<std::pair<unsigned, unsigned>> exhaustive;
  for (unsigned d = 1; d <= 4; ++d) exhaustive.emplace_back(2, d);
  if (hi >= 3)
    for (unsigned d = 1; d <= 2; ++d) exhaustive.emplace_back(3, d);
  for (auto [n, d] : exhaustive) {
    const std::size_t size = basis_size(n, d);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
      MonomialSpace space(n, d);
      for (std::size_t i = 0; i < size; ++i)
        if (mask >> i & 1) space.insert_position(i);
      ++out.trials;
      absorb(out, check_macaulay(space));
    }
  }
  // Every lex segment in the random range, where equality must hold.
  for (unsigned n = 2; n <= hi; ++n)
    for (unsigned d = 1; d <= 4; ++d)
      for (std::size_t k = 0; k <= basis_size(n, d); ++k) {
        ++out.trials;
        absorb(out, check_macaulay(lex_segment(n, d, k)));
      }
  out.merge(run_trials(id, cfg, nd_cells(2, hi, 1, 4), t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    MonomialSpace space(c.n, c.d);
    const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (std::size_t i = 0; i < basis_size(c.n, c.d); ++i)
      if (coin(rng, p)) space.insert_position(i);
    absorb(rep, check_macaulay(space));
  }));
  json ex = json::array();
  for (auto [n, d] : exhaustive) ex.push_back({n, d});
  out.ranges = {{"exhaustive", ex}, {"lex_segments", cell_range(2, hi, 1, 4, 0)}, {"random", cell_range(2, hi, 1, 4, t)}};
  return out;
}

LemmaReport suite_block_identity(const SuiteConfig& cfg) {
  const unsigned hi = cap(cfg, 5);
  const std::uint64_t t = trials_or(cfg, 10'000);
  LemmaReport out = run_trials("block-identity", cfg, nd_cells(2, hi, 1, 4), t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    if (coin(rng, 0.5)) {
      absorb(rep, check_block_identity(CoeffVector(c.n, c.d, random_signed_vector(rng, basis_size(c.n, c.d)))));
      return;
    }
    // Rebuild h from nonnegative slack blocks so that both sides of the equivalence are exercised.
    std::vector<CoeffVector> blocks;
    for (unsigned j = 0; j <= c.d; ++j) {
      CoeffVector gamma = random_nonneg(rng, c.n - 1, j, uniform(rng, 0, basis_size(c.n - 1, j)));
      blocks.push_back(j == 0 ? gamma : gamma + Rational(-1) * apply(blocks.back()));
    }
    absorb(rep, check_block_identity(concat_blocks(c.n, c.d, blocks)));
  });
  out.ranges = cell_range(2, hi, 1, 4, t);
  return out;
}

// Minimal rank for (n, 2) from a verified search, used as the inductive term.
std::optional<std::size_t> certified_rank(unsigned n) {
  SearchConfig sc;
  sc.n = n;
  sc.d = 2;
  const RndCertificate cert = compute_rnd(sc);
  if (!verify_certificate(cert)) return std::nullopt;
  return cert.value();
}

LemmaReport suite_structural(const SuiteConfig& cfg) {
  const unsigned hi = cap(cfg, 5);
  const std::uint64_t t = trials_or(cfg, 1'000);
  std::map<unsigned, std::optional<std::size_t>> prev;
  for (unsigned n = 3; n <= hi; ++n) prev[n] = certified_rank(n - 1);
  LemmaReport out;
  out.id = "structural-d2";
  // The two extremal witnesses first.
  for (const auto& w : known_witnesses(3, 2)) {
    ++out.trials;
    absorb(out, check_structural(w, hi >= 3 ? prev[3] : std::nullopt));
  }
  if (hi >= 4) {
    for (const auto& w : known_witnesses(4, 2)) {
      ++out.trials;
      absorb(out, check_structural(w, prev[4]));
    }
  }
  out.merge(run_trials("structural-d2", cfg, nd_cells(3, hi, 2, 2), t, [&prev](const Cell& c, Rng& rng, LemmaReport& rep) {
    const auto off = block_offsets(c.n, 2);
    std::vector<Req> req(off.back(), Req::free);
    req[uniform(rng, off[2], off[3] - 1)] = Req::le_minus_one;
    if (auto h = sample_cone(c.n, 2, req, rng)) absorb(rep, check_structural(*h, prev.at(c.n)));
  }));
  json rp = json::object();
  for (auto& [n, v] : prev) rp[std::to_string(n - 1)] = v ? json(*v) : json(nullptr);
  out.ranges = {{"random", cell_range(3, hi, 2, 2, t)}, {"certified_previous", rp}};
  return out;
}

LemmaReport suite_single_slack_block(const SuiteConfig& cfg) {
  const unsigned hi = cap(cfg, 5);
  const std::uint64_t t = trials_or(cfg, 1'000);
  LemmaReport out = run_trials("single-slack-block", cfg, nd_cells(2, hi, 2, 4), t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    // The lone nonzero slack block sits at position a with d - a even and a <= d - 2;
    // the blocks after it alternate in sign.
    const unsigned choices = c.d / 2;
    const unsigned a = c.d - 2 * static_cast<unsigned>(uniform(rng, 1, choices));
    std::vector<CoeffVector> blocks;
    for (unsigned j = 0; j <= c.d; ++j) {
      if (j < a) {
        blocks.emplace_back(c.n - 1, j);
      } else if (j == a) {
        const std::size_t size = basis_size(c.n - 1, j);
        blocks.push_back(random_nonneg(rng, c.n - 1, j, uniform(rng, 1, size)));
      } else {
        blocks.push_back(Rational(-1) * apply(blocks.back()));
      }
    }
    absorb(rep, check_single_slack_block(concat_blocks(c.n, c.d, blocks)));
  });
  out.ranges = cell_range(2, hi, 2, 4, t);
  return out;
}

LemmaReport suite_two_block(const SuiteConfig& cfg) {
  const unsigned hi = cap(cfg, 5);
  const std::uint64_t t = trials_or(cfg, 1'000);
  LemmaReport out = run_trials("two-block-combination", cfg, nd_cells(2, hi, 2, 4), t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    // Leading term must carry a plus sign: d - a even, a < b <= d.
    const unsigned a = c.d - 2 * static_cast<unsigned>(uniform(rng, 1, c.d / 2));
    const unsigned b = static_cast<unsigned>(uniform(rng, a + 1, c.d));
    const MultiIndex alpha = monomial_at(c.n, a, uniform(rng, 0, basis_size(c.n, a) - 1));
    CoeffVector u(c.n, a);
    u[index_of(alpha)] = small_positive(rng);
    CoeffVector w(c.n, b);
    if ((c.d - b) % 2 == 0) {
      w[uniform(rng, 0, w.size() - 1)] = small_positive(rng);
    } else {
      // Subtracted term: its support must sit inside the first one's, with a small enough scale.
      const MultiIndex step = monomial_at(c.n, b - a, uniform(rng, 0, basis_size(c.n, b - a) - 1));
      const std::size_t beta = index_of(alpha.times(step));
      w[beta] = 1;
      const CoeffVector pu = iterated_apply(c.n, a, c.d + 1, u);
      const CoeffVector pw = iterated_apply(c.n, b, c.d + 1, w);
      std::optional<Rational> lambda_max;
      for (std::size_t i = 0; i < pw.size(); ++i)
        if (pw[i] != 0) {
          Rational ratio = pu[i] / pw[i];
          if (!lambda_max || ratio < *lambda_max) lambda_max = ratio;
        }
      const long q = static_cast<long>(uniform(rng, 1, 4));
      w[beta] = *lambda_max * Rational(static_cast<long>(uniform(rng, 1, static_cast<std::size_t>(q))), q);
    }
    absorb(rep, check_two_block_combination(u, w, c.d));
  });
  out.ranges = cell_range(2, hi, 2, 4, t);
  return out;
}

LemmaReport suite_single_negative(const SuiteConfig& cfg) {
  const unsigned hi = cap(cfg, 5);
  const std::uint64_t t = trials_or(cfg, 200);
  LemmaReport out = run_trials("single-negative", cfg, nd_cells(2, hi, 2, 4), t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    const std::size_t size = basis_size(c.n, c.d);
    std::vector<Req> req(size, Req::nonneg);
    req[uniform(rng, 0, size - 1)] = Req::le_minus_one;
    if (auto h = sample_cone(c.n, c.d, req, rng)) absorb(rep, check_single_negative(*h));
  });
  out.ranges = cell_range(2, hi, 2, 4, t);
  return out;
}

LemmaReport suite_sign_pattern(const SuiteConfig& cfg) {
  const unsigned hi = cap(cfg, 5);
  const std::uint64_t t = trials_or(cfg, 700);
  LemmaReport out = run_trials("sign-pattern-floor", cfg, nd_cells(4, hi, 3, 4), t, [](const Cell& c, Rng& rng, LemmaReport& rep) {
    const auto off = block_offsets(c.n, c.d);
    std::vector<Req> req(off.back(), Req::free);
    for (unsigned j = 1; j <= c.d; ++j)
      for (std::size_t i = off[j]; i < off[j + 1]; ++i) req[i] = j == c.d ? Req::zero : Req::nonneg;
    const auto negatives = random_subset(rng, off[c.d] - off[c.d - 1], 2);
    for (std::size_t i : negatives) req[off[c.d - 1] + i] = Req::le_minus_one;
    // Half the time the two positives are drawn from the shadow of the negatives, where
    // they can absorb the negative prolongation; otherwise anywhere in the last block.
    std::vector<std::size_t> pool;
    if (coin(rng, 0.5)) {
      std::set<std::size_t> shadow_pos;
      for (std::size_t i : negatives) {
        const MultiIndex alpha = monomial_at(c.n - 1, c.d - 1, i);
        for (unsigned k = 0; k + 1 < c.n; ++k) shadow_pos.insert(index_of(alpha.times_variable(k)));
      }
      pool.assign(shadow_pos.begin(), shadow_pos.end());
    } else {
      pool.resize(off[c.d + 1] - off[c.d]);
      std::iota(pool.begin(), pool.end(), 0);
    }
    for (std::size_t i : random_subset(rng, pool.size(), 2)) req[off[c.d] + pool[i]] = Req::ge_one;
    if (auto h = sample_cone(c.n, c.d, req, rng)) absorb(rep, check_sign_pattern_floor(*h));
  });
  // For d = 2 the hypothesis is never met; confirm that on every sign pattern.
  std::uint64_t patterns = 0, feasible = 0;
  Rng unused = rng_for(cfg.seed, "sign-pattern-floor", 0, 0);
  for (unsigned n = 4; n <= hi; ++n) {
    const auto off = block_offsets(n, 2);
    for (std::size_t a = off[1]; a < off[2]; ++a)
      for (std::size_t b = a + 1; b < off[2]; ++b)
        for (std::size_t p = off[2]; p < off[3]; ++p)
          for (std::size_t q = p + 1; q < off[3]; ++q) {
            std::vector<Req> req(off.back(), Req::zero);
            req[0] = Req::free;
            for (std::size_t i = off[1]; i < off[2]; ++i) req[i] = Req::nonneg;
            req[a] = req[b] = Req::le_minus_one;
            req[p] = req[q] = Req::ge_one;
            ++patterns;
            ++out.trials;
            if (auto h = sample_cone(n, 2, req, unused, false)) {
              ++feasible;
              absorb(out, check_sign_pattern_floor(*h));
            }
          }
  }
  out.ranges = {{"random", cell_range(4, hi, 3, 4, t)}, {"d2_patterns", patterns}, {"d2_feasible_patterns", feasible}};
  return out;
}

using SuiteFn = LemmaReport (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"first-prolongation", suite_first_prolongation},
      {"second-prolongation", suite_second_prolongation},
      {"ghp-sandwich", suite_ghp},
      {"gao-ng-support", suite_gao_ng},
      {"macaulay-shadow", suite_macaulay},
      {"block-identity", suite_block_identity},
      {"structural-d2", suite_structural},
      {"single-slack-block", suite_single_slack_block},
      {"two-block-combination", suite_two_block},
      {"single-negative", suite_single_negative},
      {"sign-pattern-floor", suite_sign_pattern},
  };
  return r;
}

}  // namespace

std::vector<std::string> lemma_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : registry()) ids.push_back(id);
  return ids;
}

LemmaReport run_lemma(const std::string& id, const SuiteConfig& config) {
  for (const auto& [name, fn] : registry()) {
    if (name != id) continue;
    LemmaReport r = fn(config);
    r.id = id;
    r.seed = config.seed;
    return r;
  }
  throw std::invalid_argument("unknown lemma id '" + id + "'");
}

}  // namespace prolong
