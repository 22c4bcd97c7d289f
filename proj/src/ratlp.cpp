#include "prolong/ratlp.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace prolong {

void LinearSystem::add(RationalVector coeffs, Relation relation, Rational rhs, std::string tag) {
  if (coeffs.size() != num_vars_) throw std::invalid_argument("LinearSystem::add: coefficient length mismatch");
  for (auto& c : coeffs) c.canonicalize();
  rhs.canonicalize();
  constraints_.push_back({std::move(coeffs), std::move(rhs), relation, std::move(tag)});
}

void LinearSystem::add_unit_sum(std::span<const std::size_t> indices, Relation relation, Rational rhs,
                                std::string tag) {
  RationalVector coeffs(num_vars_);
  for (auto i : indices) {
    if (i >= num_vars_) throw std::out_of_range("LinearSystem::add_unit_sum: index out of range");
    coeffs[i] += 1;
  }
  add(std::move(coeffs), relation, std::move(rhs), std::move(tag));
}

bool LinearSystem::has_strict() const {
  return std::any_of(constraints_.begin(), constraints_.end(),
                     [](const Constraint& c) { return c.relation == Relation::greater; });
}

nlohmann::json LinearSystem::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : constraints_) {
    const char* rel = c.relation == Relation::equal ? "=" : c.relation == Relation::greater_equal ? ">=" : ">";
    rows.push_back({{"coeffs", to_strings(c.coeffs)}, {"rel", rel}, {"rhs", to_string(c.rhs)}, {"tag", c.tag}});
  }
  return {{"num_vars", num_vars_}, {"constraints", rows}};
}

LinearSystem homogenize_strict(const LinearSystem& system) {
  LinearSystem out(system.num_vars());
  for (const auto& c : system.constraints()) {
    if (c.rhs != 0) throw std::invalid_argument("homogenize_strict: system is not homogeneous");
    if (c.relation == Relation::greater) {
      out.add(c.coeffs, Relation::greater_equal, Rational(1), c.tag);
    } else {
      out.add(c.coeffs, c.relation, c.rhs, c.tag);
    }
  }
  return out;
}

bool satisfies(const LinearSystem& system, std::span<const Rational> x) {
  if (x.size() != system.num_vars()) return false;
  for (const auto& c : system.constraints()) {
    Rational lhs = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (c.coeffs[k] != 0) lhs += c.coeffs[k] * x[k];
    }
    switch (c.relation) {
      case Relation::equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::greater_equal:
        if (lhs < c.rhs) return false;
        break;
      case Relation::greater:
        if (lhs <= c.rhs) return false;
        break;
    }
  }
  return true;
}

bool is_farkas_certificate(const LinearSystem& system, std::span<const Rational> multipliers) {
  if (system.has_strict()) throw std::invalid_argument("is_farkas_certificate: strict rows present");
  if (multipliers.size() != system.size()) return false;
  RationalVector combo(system.num_vars());
  Rational rhs = 0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto& c = system[i];
    const Rational& y = multipliers[i];
    if (y == 0) continue;
    if (c.relation == Relation::greater_equal && y < 0) return false;
    for (std::size_t k = 0; k < combo.size(); ++k) {
      if (c.coeffs[k] != 0) combo[k] += y * c.coeffs[k];
    }
    rhs += y * c.rhs;
  }
  return std::all_of(combo.begin(), combo.end(), [](const Rational& v) { return v == 0; }) && rhs > 0;
}

namespace {

// Dictionary over variables [0, m) (original, free) and [m, m + M) (one slack per
// constraint, s_i = a_i . x - b_i). Each row expresses one basic variable as
// const + sum coeff * nonbasic, and is an identity in x.
class Dictionary {
 public:
  explicit Dictionary(const LinearSystem& system)
      : system_(system), m_(system.num_vars()), rows_count_(system.size()) {
    basic_.resize(rows_count_);
    nonbasic_.resize(m_);
    rows_.assign(rows_count_, RationalVector(m_ + 1));
    for (std::size_t k = 0; k < m_; ++k) nonbasic_[k] = k;
    for (std::size_t i = 0; i < rows_count_; ++i) {
      basic_[i] = m_ + i;
      rows_[i][0] = -system[i].rhs;
      for (std::size_t k = 0; k < m_; ++k) rows_[i][k + 1] = system[i].coeffs[k];
    }
  }

  FeasResult solve() {
    pivot_in_free_variables();
    if (auto cert = retire_equalities()) return infeasible(*cert);
    return dual_simplex();
  }

 private:
  bool is_slack(std::size_t var) const { return var >= m_; }
  const Constraint& constraint_of(std::size_t var) const { return system_[var - m_]; }
  bool is_eq_slack(std::size_t var) const {
    return is_slack(var) && constraint_of(var).relation == Relation::equal;
  }
  bool is_ge_slack(std::size_t var) const {
    return is_slack(var) && constraint_of(var).relation == Relation::greater_equal;
  }

  void pivot(std::size_t r, std::size_t c) {
    RationalVector& pr = rows_[r];
    const Rational p = pr[c + 1];
    const Rational inv = 1 / p;
    for (std::size_t j = 0; j <= m_; ++j) {
      if (j == c + 1) continue;
      if (pr[j] != 0) pr[j] = -pr[j] * inv;
    }
    pr[c + 1] = inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      RationalVector& row = rows_[i];
      if (row[c + 1] == 0) continue;
      const Rational q = row[c + 1];
      for (std::size_t j = 0; j <= m_; ++j) {
        if (j == c + 1 || pr[j] == 0) continue;
        row[j] += q * pr[j];
      }
      row[c + 1] = q * inv;
    }
    std::swap(basic_[r], nonbasic_[c]);
    ++pivots_;
  }

  void pivot_in_free_variables() {
    for (std::size_t k = 0; k < m_; ++k) {
      const auto col_it = std::find(nonbasic_.begin(), nonbasic_.end(), k);
      const std::size_t c = static_cast<std::size_t>(col_it - nonbasic_.begin());
      std::optional<std::size_t> pick;
      for (int pass = 0; pass < 2 && !pick; ++pass) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
          const std::size_t v = basic_[r];
          if (!is_slack(v) || rows_[r][c + 1] == 0) continue;
          if ((pass == 0 && is_eq_slack(v)) || pass == 1) {
            if (!pick || basic_[r] < basic_[*pick]) pick = r;
          }
        }
      }
      if (pick) {
        pivot(*pick, c);
      } else {
        stuck_.push_back(k);
      }
    }
  }

  // Pivots basic equality slacks out of the basis. Returns an infeasibility certificate
  // if some equality row reduces to a nonzero constant.
  std::optional<RationalVector> retire_equalities() {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!is_eq_slack(basic_[r])) continue;
      std::optional<std::size_t> col;
      for (std::size_t c = 0; c < m_; ++c) {
        if (!is_ge_slack(nonbasic_[c]) || rows_[r][c + 1] == 0) continue;
        if (!col || nonbasic_[c] < nonbasic_[*col]) col = c;
      }
      if (col) {
        pivot(r, *col);
        continue;
      }
      if (rows_[r][0] != 0) return row_certificate(r, rows_[r][0] < 0 ? 1 : -1);
      redundant_.push_back(basic_[r]);
    }
    return std::nullopt;
  }

  // Row r reads s_r = t0 + sum t_c N_c. With sign sigma, sigma (s_r - sum t_c N_c) = sigma t0 < 0.
  RationalVector row_certificate(std::size_t r, int sigma) const {
    RationalVector y(rows_count_);
    y[basic_[r] - m_] = sigma;
    for (std::size_t c = 0; c < m_; ++c) {
      const Rational& t = rows_[r][c + 1];
      if (t == 0) continue;
      if (!is_slack(nonbasic_[c])) throw std::logic_error("ratlp: certificate row depends on a free variable");
      y[nonbasic_[c] - m_] = -sigma * t;
    }
    return y;
  }

  FeasResult dual_simplex() {
    const std::size_t max_pivots = 200000;
    while (true) {
      std::optional<std::size_t> leave;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!is_ge_slack(basic_[r]) || rows_[r][0] >= 0) continue;
        if (!leave || basic_[r] < basic_[*leave]) leave = r;
      }
      if (!leave) return feasible();
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < m_; ++c) {
        if (!is_ge_slack(nonbasic_[c]) || rows_[*leave][c + 1] <= 0) continue;
        if (!enter || nonbasic_[c] < nonbasic_[*enter]) enter = c;
      }
      if (!enter) return infeasible(row_certificate(*leave, 1));
      pivot(*leave, *enter);
      if (pivots_ > max_pivots) throw std::runtime_error("ratlp: pivot limit exceeded");
    }
  }

  FeasResult feasible() const {
    FeasResult out;
    out.feasible = true;
    out.witness.assign(m_, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!is_slack(basic_[r])) out.witness[basic_[r]] = rows_[r][0];
    }
    if (!satisfies(system_, out.witness)) throw std::logic_error("ratlp: witness failed verification");
    return out;
  }

  FeasResult infeasible(RationalVector y) const {
    if (!is_farkas_certificate(system_, y)) throw std::logic_error("ratlp: certificate failed verification");
    FeasResult out;
    out.feasible = false;
    out.multipliers = std::move(y);
    return out;
  }

  const LinearSystem& system_;
  std::size_t m_;
  std::size_t rows_count_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> stuck_;
  std::vector<std::size_t> redundant_;
  std::size_t pivots_ = 0;
};

}  // namespace

FeasResult solve_feasibility(const LinearSystem& system) {
  if (system.has_strict()) throw std::invalid_argument("solve_feasibility: strict rows must be homogenized first");
  if (system.size() == 0) {
    FeasResult out;
    out.feasible = true;
    out.witness.assign(system.num_vars(), Rational(0));
    return out;
  }
  return Dictionary(system).solve();
}

}  // namespace prolong
