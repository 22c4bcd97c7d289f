#include "prolong/reproduce.hpp"

#include <sstream>

#include "prolong/cache.hpp"
#include "prolong/certify.hpp"
#include "prolong/search.hpp"
#include "prolong/witnesses.hpp"

namespace prolong {

bool ReproduceTable::ok() const {
  for (const auto& r : rows)
    if (r.status == "fail") return false;
  return true;
}

bool ReproduceTable::any_incomplete() const {
  for (const auto& r : rows)
    if (r.status == "incomplete") return true;
  return false;
}

namespace {

std::size_t rank_floor(unsigned n, unsigned d) {
  std::size_t f = 3 * static_cast<std::size_t>(n) - 4;
  if (d == 2 && n >= 6) f = std::max<std::size_t>(f, static_cast<std::size_t>(n) * (n + 1) / 2 - 6);
  return f;
}

ReproduceRow witness_row(const std::string& name, const CoeffVector& h, std::size_t expected_rank) {
  ReproduceRow row;
  row.label = "witness " + name;
  row.n = h.n();
  row.d = h.d();
  row.kind = "witness";
  row.floor = rank_floor(h.n(), h.d());
  row.expected = expected_rank;
  const CoeffVector parts[] = {h};
  const CertReport rep = certify_polynomial(parts);
  const DegreeCert& c = rep.parts.front();
  if (c.prolong_sos) row.value = c.rank;
  if (c.is_sos) {
    row.status = "fail";
    row.note = "stored witness is nonnegative";
  } else if (!c.prolong_sos) {
    row.status = "fail";
    row.note = "prolongation of the stored witness has a negative coefficient";
  } else if (c.rank != expected_rank) {
    row.status = "fail";
    row.note = "rank " + std::to_string(c.rank) + " differs from " + std::to_string(expected_rank);
  } else if (c.rank < row.floor) {
    row.status = "fail";
    row.note = "rank below floor";
  } else {
    row.status = "pass";
  }
  return row;
}

}  // namespace

ReproduceTable reproduce(const ReproduceConfig& config) {
  ReproduceTable table;
  auto stored = [&](const std::string& name, CoeffVector fallback) {
    const auto it = config.witness_overrides.find(name);
    return it == config.witness_overrides.end() ? fallback : it->second;
  };
  table.rows.push_back(witness_row("f", stored("f", witness_f()), 5));
  table.rows.push_back(witness_row("g", stored("g", witness_g()), 8));

  std::optional<ResultsCache> cache;
  if (config.cache) cache.emplace(*config.cache);
  bool cache_dirty = false;

  struct Cell {
    unsigned n;
    bool bracket;
  };
  for (const Cell cell : {Cell{2, false}, Cell{3, false}, Cell{4, false}, Cell{5, true}}) {
    ReproduceRow row;
    row.n = cell.n;
    row.d = 2;
    row.label = "R(" + std::to_string(cell.n) + ",2)";
    row.kind = cell.bracket ? "bracket" : "exact";
    row.floor = rank_floor(cell.n, 2);
    row.expected = row.floor;

    std::optional<RndCertificate> cert;
    if (cache && cache->contains(cell.n, 2)) {
      std::string problem;
      cert = cache->get(cell.n, 2, &problem);
      if (!cert) {
        row.status = "fail";
        row.note = "cached certificate rejected: " + problem;
        table.rows.push_back(row);
        continue;
      }
      row.note = "from cache";
    }
    if (!cert) {
      SearchConfig sc;
      sc.n = cell.n;
      sc.d = 2;
      sc.node_budget = config.node_budget;
      sc.time_budget_secs = config.bracket_budget_secs;
      cert = compute_rnd(sc);
      std::string why;
      if (!verify_certificate(*cert, &why)) {
        row.status = "fail";
        row.note = "certificate does not verify: " + why;
        table.rows.push_back(row);
        continue;
      }
      if (cache && cert->complete) {
        cache->put(*cert);
        cache_dirty = true;
      }
    }
    row.lower = cert->lower_bound;
    row.upper = cert->upper_bound;
    row.value = cert->value();
    if (cert->complete && !row.value) {
      row.status = "fail";
      row.note = "no non-SOS form with SOS prolongation found";
    } else if (row.value) {
      row.status = *row.value >= row.floor ? "pass" : "fail";
    } else if (cell.bracket) {
      row.status = cert->lower_bound >= row.floor ? "pass" : "incomplete";
    } else {
      row.status = "incomplete";
    }
    table.rows.push_back(row);
  }
  if (cache && cache_dirty) cache->save();
  return table;
}

namespace {

std::string opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const ReproduceTable& table) {
  std::ostringstream out;
  out << "label,n,d,kind,value,lower,upper,floor,expected,status,note\n";
  for (const auto& r : table.rows) {
    out << csv_field(r.label) << ',' << r.n << ',' << r.d << ',' << r.kind << ',' << opt(r.value) << ','
        << opt(r.lower) << ',' << opt(r.upper) << ',' << r.floor << ',' << r.expected << ',' << r.status << ','
        << csv_field(r.note) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const ReproduceTable& table) {
  using nlohmann::json;
  json rows = json::array();
  auto o = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : table.rows) {
    rows.push_back({{"label", r.label},
                    {"n", r.n},
                    {"d", r.d},
                    {"kind", r.kind},
                    {"value", o(r.value)},
                    {"lower", o(r.lower)},
                    {"upper", o(r.upper)},
                    {"floor", r.floor},
                    {"expected", r.expected},
                    {"status", r.status},
                    {"note", r.note}});
  }
  return {{"rows", rows}, {"ok", table.ok()}};
}

}  // namespace prolong
