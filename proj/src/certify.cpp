#include "prolong/certify.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace prolong {

bool is_sos_diagonal(const CoeffVector& h) { return is_nonnegative(h.view()); }

std::optional<std::size_t> prolongation_rank(const CoeffVector& h) {
  const CoeffVector jh = apply(h);
  if (!is_nonnegative(jh.view())) return std::nullopt;
  return rank_of(jh.view());
}

namespace {

// Rank floors that every certified instance must respect: 3n - 4 for a non-SOS form with
// SOS prolongation (d >= 2), impossibility for d <= 1, and the sandwich for SOS forms.
bool violates_floors(const DegreeCert& c, unsigned n) {
  if (!c.prolong_sos) return false;
  const std::size_t r = c.rank;
  if (!c.is_sos) {
    if (c.degree <= 1) return true;
    return r + 4 < 3 * static_cast<std::size_t>(n);
  }
  const std::size_t k = c.coefficients.rank();
  if (k == 0) return r != 0;
  if (k <= n - 1) return r + k * (k - 1) / 2 < n * k || r > n * k;
  return r < static_cast<std::size_t>(n) * (n + 1) / 2;
}

}  // namespace

CertReport certify_polynomial(std::span<const CoeffVector> parts) {
  if (parts.empty()) throw std::invalid_argument("certify_polynomial: no parts");
  CertReport report;
  report.n = parts.front().n();
  if (report.n < 2) throw std::invalid_argument("certify_polynomial: n must be >= 2");
  std::set<unsigned> seen;
  for (const auto& p : parts) {
    if (p.n() != report.n) throw std::invalid_argument("certify_polynomial: parts have mixed n");
    if (!seen.insert(p.d()).second) {
      throw std::invalid_argument("certify_polynomial: degree " + std::to_string(p.d()) + " given twice");
    }
  }
  report.bands = conjecture_bands(report.n);

  std::vector<const CoeffVector*> ordered;
  for (const auto& p : parts) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->d() < b->d(); });

  for (const CoeffVector* part : ordered) {
    DegreeCert c;
    c.degree = part->d();
    c.coefficients = profile(part->view());
    c.is_sos = c.coefficients.negative == 0;
    const CoeffVector jh = apply(*part);
    c.prolonged = profile(jh.view());
    c.prolong_sos = c.prolonged.negative == 0;
    c.rank = c.prolonged.rank();
    c.low_degree_obstruction = c.degree <= 1 && !c.is_sos;
    c.floor_violation = violates_floors(c, report.n);

    report.is_sos = report.is_sos && c.is_sos;
    report.prolong_sos = report.prolong_sos && c.prolong_sos;
    report.total_rank += c.rank;
    report.floor_violation = report.floor_violation || c.floor_violation;
    report.parts.push_back(c);
  }
  if (report.prolong_sos) report.band = classify_rank(report.bands, report.total_rank);
  return report;
}

nlohmann::json to_json(const CertReport& report) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& c : report.parts) {
    parts.push_back({{"degree", c.degree},
                     {"is_sos", c.is_sos},
                     {"prolong_sos", c.prolong_sos},
                     {"rank", c.rank},
                     {"coefficients", to_json(c.coefficients)},
                     {"prolonged", to_json(c.prolonged)},
                     {"low_degree_obstruction", c.low_degree_obstruction},
                     {"floor_violation", c.floor_violation}});
  }
  nlohmann::json bands = nlohmann::json::array();
  for (const auto& b : report.bands.bands) bands.push_back({b.low, b.high});
  nlohmann::json out = {{"n", report.n},
                        {"parts", parts},
                        {"is_sos", report.is_sos},
                        {"prolong_sos", report.prolong_sos},
                        {"total_rank", report.total_rank},
                        {"kappa0", report.bands.kappa0},
                        {"bands", bands},
                        {"threshold", report.bands.threshold},
                        {"floor_violation", report.floor_violation}};
  if (report.band) {
    out["band"] = to_string(report.band->kind);
    if (report.band->kappa) out["band_kappa"] = *report.band->kappa;
  } else {
    out["band"] = nullptr;
  }
  return out;
}

}  // namespace prolong
