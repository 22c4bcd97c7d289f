#include "prolong/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "prolong/counting.hpp"
#include "prolong/witnesses.hpp"

namespace prolong {

void SearchConfig::validate() const {
  if (n < 2) throw std::invalid_argument("search: n must be >= 2");
  if (d < 1) throw std::invalid_argument("search: d must be >= 1");
  if (node_budget == 0) throw std::invalid_argument("search: node budget must be positive");
  if (!(time_budget_secs > 0.0)) throw std::invalid_argument("search: time budget must be positive");
  if (branch_order != "lex-first-positive")
    throw std::invalid_argument("search: unknown branch order '" + branch_order + "'");
  if (initial_witness && (initial_witness->n() != n || initial_witness->d() != d))
    throw std::invalid_argument("search: initial witness has the wrong shape");
}

std::string to_string(SearchNode::Outcome outcome) {
  switch (outcome) {
    case SearchNode::Outcome::split: return "split";
    case SearchNode::Outcome::infeasible: return "infeasible";
    case SearchNode::Outcome::bound: return "bound";
    case SearchNode::Outcome::floor: return "floor";
    case SearchNode::Outcome::open: return "open";
  }
  return "open";
}

namespace {

SearchNode::Outcome outcome_from_string(const std::string& s) {
  if (s == "split") return SearchNode::Outcome::split;
  if (s == "infeasible") return SearchNode::Outcome::infeasible;
  if (s == "bound") return SearchNode::Outcome::bound;
  if (s == "floor") return SearchNode::Outcome::floor;
  if (s == "open") return SearchNode::Outcome::open;
  throw std::invalid_argument("certificate: unknown outcome '" + s + "'");
}

std::string side_name(RowState s) {
  switch (s) {
    case RowState::zero: return "zero";
    case RowState::positive: return "positive";
    case RowState::free: return "free";
  }
  return "free";
}

RowState side_from_string(const std::string& s) {
  if (s == "zero") return RowState::zero;
  if (s == "positive") return RowState::positive;
  if (s == "free") return RowState::free;
  throw std::invalid_argument("certificate: unknown side '" + s + "'");
}

// Rank floors from the literature, used only when explicitly requested.
std::size_t known_floor(unsigned n, unsigned d) {
  std::size_t f = n;
  if (d >= 2) f = std::max<std::size_t>(f, 3 * static_cast<std::size_t>(n) - 4);
  return f;
}

bool is_valid_witness(const ProlongMatrix& J, const CoeffVector& h) {
  if (h.n() != J.n() || h.d() != J.d()) return false;
  if (is_nonnegative(h.view())) return false;
  return is_nonnegative(J.multiply(h.view()));
}

bool is_orbit_representative(const MultiIndex& mi) {
  const auto& e = mi.exponents();
  return std::is_sorted(e.begin(), e.end(), std::greater<>());
}

MultiIndex sorted_descending(const MultiIndex& mi) {
  std::vector<unsigned> e = mi.exponents();
  std::sort(e.begin(), e.end(), std::greater<>());
  return MultiIndex(std::move(e));
}

struct OpenNode {
  std::uint64_t id;
  std::size_t column;
  std::vector<RowState> states;
  std::size_t positives;
  std::optional<RationalVector> witness;  // a point of the node, when known
};

// Fewest forced-positive rows first; among equals, the newest node.
struct OpenOrder {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.positives != b.positives) return a.positives > b.positives;
    return a.id < b.id;
  }
};

}  // namespace

LinearSystem node_system(const ProlongMatrix& J, std::size_t column, std::span<const RowState> states) {
  if (column >= J.cols()) throw std::out_of_range("node_system: column out of range");
  if (states.size() != J.rows()) throw std::invalid_argument("node_system: wrong number of row states");
  LinearSystem sys(J.cols());
  RationalVector neg(J.cols());
  neg[column] = -1;
  sys.add(std::move(neg), Relation::greater, 0, "column");
  for (std::size_t r = 0; r < J.rows(); ++r) {
    const Relation rel = states[r] == RowState::zero       ? Relation::equal
                         : states[r] == RowState::positive ? Relation::greater
                                                           : Relation::greater_equal;
    sys.add_unit_sum(J.row(r), rel, 0, "row " + std::to_string(r));
  }
  return homogenize_strict(sys);
}

std::vector<std::size_t> orbit_representatives(unsigned n, unsigned d) {
  std::vector<std::size_t> out;
  const auto basis = lex_basis(n, d);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (is_orbit_representative(basis[i])) out.push_back(i);
  return out;
}

std::vector<CoeffVector> known_witnesses(unsigned n, unsigned d) {
  std::vector<CoeffVector> out;
  if (d < 2) return out;
  std::optional<CoeffVector> base;
  if (n == 2) base = witness_two_variables();
  if (n == 3) base = witness_f();
  if (n == 4) base = witness_g();
  if (base) out.push_back(multiply_by_x1_power(*base, d - 2));
  return out;
}

RndCertificate compute_rnd(const SearchConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const ProlongMatrix J = build_direct(config.n, config.d);

  RndCertificate cert;
  cert.n = config.n;
  cert.d = config.d;
  cert.symmetry = config.use_symmetry;
  cert.uses_floors = false;
  cert.config = {{"n", config.n},
                 {"d", config.d},
                 {"symmetry", config.use_symmetry},
                 {"node_budget", config.node_budget},
                 {"branch_order", config.branch_order},
                 {"seed_known_witnesses", config.seed_known_witnesses},
                 {"seed_floors", config.seed_floors},
                 {"initial_witness", config.initial_witness.has_value()}};

  std::optional<std::size_t> incumbent;
  auto offer = [&](const CoeffVector& h) {
    if (!is_valid_witness(J, h)) return;
    const std::size_t r = rank_of(J.multiply(h.view()));
    if (!incumbent || r < *incumbent) {
      incumbent = r;
      cert.witness = h;
    }
  };
  if (config.initial_witness) offer(*config.initial_witness);
  if (config.seed_known_witnesses)
    for (const auto& w : known_witnesses(config.n, config.d)) offer(w);

  cert.branch_columns.clear();
  if (config.use_symmetry) {
    cert.branch_columns = orbit_representatives(config.n, config.d);
  } else {
    for (std::size_t c = 0; c < J.cols(); ++c) cert.branch_columns.push_back(c);
  }

  std::priority_queue<OpenNode, std::vector<OpenNode>, OpenOrder> queue;
  auto new_node = [&](std::optional<std::uint64_t> parent, std::size_t column, std::optional<std::size_t> row,
                      RowState side, std::size_t positives) {
    SearchNode node;
    node.id = cert.log.size();
    node.parent = parent;
    node.column = column;
    node.fixed_row = row;
    node.side = side;
    node.positives = positives;
    cert.log.push_back(std::move(node));
    return cert.log.back().id;
  };
  for (std::size_t c : cert.branch_columns) {
    const auto id = new_node(std::nullopt, c, std::nullopt, RowState::free, 0);
    queue.push(OpenNode{id, c, std::vector<RowState>(J.rows(), RowState::free), 0, std::nullopt});
  }

  const std::size_t floor = known_floor(config.n, config.d);
  bool out_of_budget = false;
  std::uint64_t processed = 0;
  while (!queue.empty()) {
    if (incumbent && queue.top().positives >= *incumbent) break;  // everything left is dominated
    if (config.seed_floors && incumbent && *incumbent <= floor) {
      cert.uses_floors = true;
      break;
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (processed >= config.node_budget || elapsed > config.time_budget_secs) {
      out_of_budget = true;
      break;
    }
    OpenNode node = queue.top();
    queue.pop();
    ++processed;
    SearchNode& rec = cert.log[node.id];

    if (!node.witness) {
      const FeasResult res = solve_feasibility(node_system(J, node.column, node.states));
      ++cert.stats.lp_solves;
      if (!res.feasible) {
        rec.outcome = SearchNode::Outcome::infeasible;
        for (std::size_t i = 0; i < res.multipliers.size(); ++i)
          if (res.multipliers[i] != 0) rec.farkas.emplace_back(i, res.multipliers[i]);
        ++cert.stats.infeasible_leaves;
        continue;
      }
      node.witness = res.witness;
    }

    const RationalVector jh = J.multiply(*node.witness);
    const std::size_t rank = rank_of(jh);
    if (!incumbent || rank < *incumbent) {
      incumbent = rank;
      cert.witness = CoeffVector(config.n, config.d, *node.witness);
    }

    std::optional<std::size_t> split;
    for (std::size_t r = 0; r < J.rows(); ++r) {
      if (node.states[r] == RowState::free && jh[r] > 0) {
        split = r;
        break;
      }
    }
    if (!split) {
      // Every positive row is forced, so nothing in this node beats `rank` >= incumbent.
      rec.outcome = SearchNode::Outcome::bound;
      ++cert.stats.bound_leaves;
      continue;
    }
    rec.outcome = SearchNode::Outcome::split;
    rec.split_row = split;

    std::vector<RowState> zero_states = node.states;
    zero_states[*split] = RowState::zero;
    const auto zid = new_node(node.id, node.column, split, RowState::zero, node.positives);
    queue.push(OpenNode{zid, node.column, std::move(zero_states), node.positives, std::nullopt});

    std::vector<RowState> pos_states = std::move(node.states);
    pos_states[*split] = RowState::positive;
    const auto pid = new_node(node.id, node.column, split, RowState::positive, node.positives + 1);
    queue.push(OpenNode{pid, node.column, std::move(pos_states), node.positives + 1, std::move(node.witness)});
  }

  // Whatever is still queued is either dominated by the incumbent, floor-pruned, or open.
  std::optional<std::size_t> open_min;
  while (!queue.empty()) {
    const OpenNode& node = queue.top();
    SearchNode& rec = cert.log[node.id];
    if (incumbent && node.positives >= *incumbent) {
      rec.outcome = SearchNode::Outcome::bound;
      ++cert.stats.bound_leaves;
    } else if (cert.uses_floors) {
      rec.outcome = SearchNode::Outcome::floor;
    } else {
      rec.outcome = SearchNode::Outcome::open;
      if (!open_min || node.positives < *open_min) open_min = node.positives;
    }
    queue.pop();
  }

  cert.stats.nodes = cert.log.size();
  cert.stats.elapsed_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  cert.upper_bound = incumbent;
  cert.complete = !out_of_budget || !open_min;
  if (cert.complete) {
    cert.empty = !incumbent.has_value();
    cert.lower_bound = incumbent.value_or(0);
  } else {
    cert.lower_bound = incumbent ? std::min(*open_min, *incumbent) : *open_min;
  }
  if (cert.uses_floors && incumbent) cert.lower_bound = std::max(cert.lower_bound, std::min(floor, *incumbent));
  return cert;
}

bool verify_certificate(const RndCertificate& cert, std::string* reason, bool allow_floors) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (cert.n < 2 || cert.d < 1) return fail("invalid (n, d)");
  if (cert.uses_floors && !allow_floors) return fail("certificate relies on external rank floors");
  const ProlongMatrix J = build_direct(cert.n, cert.d);

  // Witness and upper bound.
  if (cert.witness.has_value() != cert.upper_bound.has_value()) return fail("witness and upper bound disagree");
  if (cert.witness) {
    const CoeffVector& w = *cert.witness;
    if (w.n() != cert.n || w.d() != cert.d || w.size() != J.cols()) return fail("witness has the wrong shape");
    if (is_nonnegative(w.view())) return fail("witness is nonnegative");
    const RationalVector jw = J.multiply(w.view());
    if (!is_nonnegative(jw)) return fail("prolonged witness has a negative entry");
    if (rank_of(jw) != *cert.upper_bound) return fail("witness rank differs from the claimed value");
  }
  if (cert.empty && (!cert.complete || cert.witness)) return fail("empty flag inconsistent");
  if (cert.complete && !cert.empty && !cert.witness) return fail("complete certificate without witness");
  if (cert.complete && cert.upper_bound && cert.lower_bound != *cert.upper_bound)
    return fail("complete certificate with a gap");
  if (cert.upper_bound && cert.lower_bound > *cert.upper_bound) return fail("lower bound exceeds upper bound");

  // Every negative-column orbit must be branched on exactly once.
  const auto basis = lex_basis(cert.n, cert.d);
  std::set<std::size_t> roots_expected(cert.branch_columns.begin(), cert.branch_columns.end());
  if (roots_expected.size() != cert.branch_columns.size()) return fail("duplicate branch column");
  for (std::size_t c : roots_expected)
    if (c >= J.cols()) return fail("branch column out of range");
  for (std::size_t c = 0; c < J.cols(); ++c) {
    const std::size_t target = cert.symmetry ? index_of(sorted_descending(basis[c])) : c;
    if (!roots_expected.count(target)) return fail("column " + std::to_string(c) + " is not covered");
  }

  // Replay the tree.
  const auto& log = cert.log;
  std::vector<std::vector<RowState>> states(log.size());
  std::vector<std::vector<std::uint64_t>> children(log.size());
  std::set<std::size_t> roots_seen;
  std::optional<std::size_t> open_min;
  for (std::size_t i = 0; i < log.size(); ++i) {
    const SearchNode& node = log[i];
    if (node.id != i) return fail("log ids are not sequential");
    if (!node.parent) {
      if (node.fixed_row) return fail("root node with a fixed row");
      if (!roots_expected.count(node.column) || !roots_seen.insert(node.column).second)
        return fail("unexpected root column");
      states[i].assign(J.rows(), RowState::free);
    } else {
      const std::uint64_t p = *node.parent;
      if (p >= i) return fail("parent does not precede child");
      const SearchNode& par = log[p];
      if (par.outcome != SearchNode::Outcome::split || !par.split_row) return fail("parent is not a split");
      if (!node.fixed_row || *node.fixed_row != *par.split_row) return fail("child does not fix the split row");
      if (node.column != par.column) return fail("child changes column");
      if (node.side != RowState::zero && node.side != RowState::positive) return fail("child side must be fixed");
      states[i] = states[p];
      states[i][*node.fixed_row] = node.side;
      children[p].push_back(i);
    }
    const std::size_t positives =
        static_cast<std::size_t>(std::count(states[i].begin(), states[i].end(), RowState::positive));
    if (positives != node.positives) return fail("positive count mismatch at node " + std::to_string(i));
  }
  if (roots_seen.size() != roots_expected.size()) return fail("missing root");

  for (std::size_t i = 0; i < log.size(); ++i) {
    const SearchNode& node = log[i];
    switch (node.outcome) {
      case SearchNode::Outcome::split: {
        if (!node.split_row || *node.split_row >= J.rows()) return fail("bad split row");
        if (states[i][*node.split_row] != RowState::free) return fail("split on a fixed row");
        if (children[i].size() != 2 || log[children[i][0]].side == log[children[i][1]].side)
          return fail("split node without both children");
        break;
      }
      case SearchNode::Outcome::infeasible: {
        if (!children[i].empty()) return fail("leaf with children");
        const LinearSystem sys = node_system(J, node.column, states[i]);
        RationalVector y(sys.size());
        for (const auto& [idx, val] : node.farkas) {
          if (idx >= y.size()) return fail("multiplier index out of range");
          y[idx] = val;
        }
        if (!is_farkas_certificate(sys, y)) return fail("invalid infeasibility certificate at node " + std::to_string(i));
        break;
      }
      case SearchNode::Outcome::bound:
        if (!children[i].empty()) return fail("leaf with children");
        if (!cert.upper_bound || node.positives < *cert.upper_bound)
          return fail("bound leaf below the incumbent at node " + std::to_string(i));
        break;
      case SearchNode::Outcome::floor:
        if (!children[i].empty()) return fail("leaf with children");
        if (!cert.uses_floors) return fail("floor leaf in a self-contained certificate");
        if (!cert.upper_bound || *cert.upper_bound > known_floor(cert.n, cert.d))
          return fail("floor leaf while the incumbent is above the floor");
        break;
      case SearchNode::Outcome::open:
        if (!children[i].empty()) return fail("leaf with children");
        if (cert.complete) return fail("open leaf in a complete certificate");
        if (!open_min || node.positives < *open_min) open_min = node.positives;
        break;
    }
  }
  if (!cert.complete) {
    if (!open_min) return fail("incomplete certificate without open leaves");
    if (cert.lower_bound > *open_min) return fail("lower bound exceeds an open leaf");
  }
  return true;
}

std::optional<CoeffVector> rank1_patch(const CoeffVector& block) {
  if (!is_nonnegative(block.view())) throw std::invalid_argument("rank1_patch: block has a negative entry");
  if (block.d() < 1) throw std::invalid_argument("rank1_patch: block degree must be >= 1");
  const unsigned m = block.n();
  const unsigned d = block.d();
  CoeffVector delta(m, d - 1);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < block.size(); ++i)
    if (block[i] != 0) support.push_back(i);
  if (support.empty()) return delta;

  if (support.size() == 1) {
    const MultiIndex alpha = monomial_at(m, d, support[0]);
    std::size_t j = m;
    while (alpha[j - 1] == 0) --j;
    delta[index_of(alpha.divided_by_variable(j - 1))] = block[support[0]];
    return delta;
  }
  if (support.size() == 2) {
    if (rank_of(apply(block).view()) != 2 * static_cast<std::size_t>(m) - 1) return std::nullopt;
    const MultiIndex alpha = monomial_at(m, d, support[0]);
    const MultiIndex beta = monomial_at(m, d, support[1]);
    // alpha - beta = e_j - e_i, so alpha / x_j = beta / x_i is the common divisor.
    std::size_t j = m;
    for (std::size_t k = 0; k < m; ++k)
      if (alpha[k] > beta[k]) j = k;
    if (j == m) return std::nullopt;
    delta[index_of(alpha.divided_by_variable(j))] = block[support[0]] + block[support[1]];
    return delta;
  }
  return std::nullopt;
}

nlohmann::json to_json(const RndCertificate& cert) {
  using nlohmann::json;
  json log = json::array();
  for (const auto& node : cert.log) {
    json j = {{"id", node.id}, {"column", node.column}, {"outcome", to_string(node.outcome)},
              {"positives", node.positives}};
    j["parent"] = node.parent ? json(*node.parent) : json(nullptr);
    j["row"] = node.fixed_row ? json(*node.fixed_row) : json(nullptr);
    j["side"] = side_name(node.side);
    if (node.split_row) j["split"] = *node.split_row;
    if (!node.farkas.empty()) {
      json f = json::array();
      for (const auto& [idx, val] : node.farkas) f.push_back(json::array({idx, to_string(val)}));
      j["farkas"] = std::move(f);
    }
    log.push_back(std::move(j));
  }
  json out = {{"n", cert.n},
              {"d", cert.d},
              {"complete", cert.complete},
              {"empty", cert.empty},
              {"lower_bound", cert.lower_bound},
              {"symmetry", cert.symmetry},
              {"uses_floors", cert.uses_floors},
              {"branch_columns", cert.branch_columns},
              {"config", cert.config},
              {"stats",
               {{"nodes", cert.stats.nodes},
                {"lp_solves", cert.stats.lp_solves},
                {"infeasible_leaves", cert.stats.infeasible_leaves},
                {"bound_leaves", cert.stats.bound_leaves}}},
              {"log", std::move(log)}};
  const auto value = cert.value();
  out["value"] = value ? json(*value) : json(nullptr);
  out["upper_bound"] = cert.upper_bound ? json(*cert.upper_bound) : json(nullptr);
  out["witness"] = cert.witness ? json(to_strings(cert.witness->view())) : json(nullptr);
  return out;
}

RndCertificate certificate_from_json(const nlohmann::json& j) {
  RndCertificate cert;
  cert.n = j.at("n").get<unsigned>();
  cert.d = j.at("d").get<unsigned>();
  if (cert.n < 2 || cert.d < 1) throw std::invalid_argument("certificate: invalid (n, d)");
  cert.complete = j.at("complete").get<bool>();
  cert.empty = j.at("empty").get<bool>();
  cert.lower_bound = j.at("lower_bound").get<std::size_t>();
  cert.symmetry = j.at("symmetry").get<bool>();
  cert.uses_floors = j.value("uses_floors", false);
  cert.branch_columns = j.at("branch_columns").get<std::vector<std::size_t>>();
  cert.config = j.value("config", nlohmann::json::object());
  if (j.contains("stats")) {
    const auto& s = j.at("stats");
    cert.stats.nodes = s.value("nodes", std::uint64_t{0});
    cert.stats.lp_solves = s.value("lp_solves", std::uint64_t{0});
    cert.stats.infeasible_leaves = s.value("infeasible_leaves", std::uint64_t{0});
    cert.stats.bound_leaves = s.value("bound_leaves", std::uint64_t{0});
  }
  if (!j.at("upper_bound").is_null()) cert.upper_bound = j.at("upper_bound").get<std::size_t>();
  if (!j.at("value").is_null()) {
    // The value is redundant with upper_bound; a mismatch means tampering, which the verifier
    // catches through the witness rank.
    cert.upper_bound = j.at("value").get<std::size_t>();
    if (!cert.complete) throw std::invalid_argument("certificate: value on an incomplete result");
  }
  if (!j.at("witness").is_null()) {
    const auto strings = j.at("witness").get<std::vector<std::string>>();
    cert.witness = CoeffVector(cert.n, cert.d, parse_rationals(strings));
  }
  for (const auto& node : j.at("log")) {
    SearchNode s;
    s.id = node.at("id").get<std::uint64_t>();
    s.column = node.at("column").get<std::size_t>();
    s.outcome = outcome_from_string(node.at("outcome").get<std::string>());
    s.positives = node.at("positives").get<std::size_t>();
    if (!node.at("parent").is_null()) s.parent = node.at("parent").get<std::uint64_t>();
    if (!node.at("row").is_null()) s.fixed_row = node.at("row").get<std::size_t>();
    s.side = side_from_string(node.at("side").get<std::string>());
    if (node.contains("split")) s.split_row = node.at("split").get<std::size_t>();
    if (node.contains("farkas")) {
      for (const auto& pair : node.at("farkas"))
        s.farkas.emplace_back(pair.at(0).get<std::size_t>(), parse_rational(pair.at(1).get<std::string>()));
    }
    cert.log.push_back(std::move(s));
  }
  return cert;
}

}  // namespace prolong
