#pragma once

// Exact rational linear programming.
//
// solve() handles   optimize c.x   subject to   a_i.x (>=|<=|=) b_i,  x >= 0
// with a two-phase revised simplex: the basis inverse is kept as a dense
// m x m rational matrix and columns are priced on demand, which suits the
// probability programs built here (few rows, up to 2^n columns). Entering
// columns are priced by most negative reduced cost, falling back to Bland's
// rule on degenerate stretches, so the method terminates and is
// deterministic.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "probcons/formula.hpp"
#include "probcons/rational.hpp"
#include "probcons/semantics.hpp"

namespace probcons {

enum class Relation { ge, le, eq };
enum class Sense { maximize, minimize };

struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::eq;
  Rational bound;
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::infeasible;
  Rational value;                  // meaningful when optimal
  std::vector<Rational> witness;   // basic optimal point, one entry per variable

  bool optimal() const { return status == LPStatus::optimal; }
};

inline bool satisfies(const LinearConstraint& c, std::span<const Rational> x) {
  Rational lhs = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (sgn(c.coefficients[j]) != 0) lhs += c.coefficients[j] * x[j];
  }
  switch (c.relation) {
    case Relation::ge: return lhs >= c.bound;
    case Relation::le: return lhs <= c.bound;
    case Relation::eq: return lhs == c.bound;
  }
  return false;
}

namespace detail {

class RevisedSimplex {
 public:
  using Column = std::vector<std::pair<std::size_t, Rational>>;

  RevisedSimplex(std::vector<Column> columns, std::vector<Rational> rhs, std::vector<std::size_t> basis,
                 std::size_t first_artificial)
      : cols_(std::move(columns)),
        rhs_(std::move(rhs)),
        basis_(std::move(basis)),
        first_artificial_(first_artificial),
        is_basic_(cols_.size(), false) {
    std::size_t m = rhs_.size();
    binv_.assign(m, std::vector<Rational>(m, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
      binv_[i][i] = 1;
      is_basic_[basis_[i]] = true;
    }
    xb_ = rhs_;
  }

  enum class Result { optimal, unbounded };

  // Minimizes cost.x. Artificial columns never re-enter once they leave.
  Result minimize(const std::vector<Rational>& cost) {
    const std::size_t m = rhs_.size();
    std::vector<Rational> y(m);
    std::vector<Rational> u(m);
    Rational d;
    // Most negative reduced cost until more than m degenerate pivots in a
    // row, then Bland's rule until the objective moves again.
    bool bland = false;
    std::size_t stalled = 0;
    for (;;) {
      for (std::size_t k = 0; k < m; ++k) {
        y[k] = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (sgn(cost[basis_[i]]) != 0 && sgn(binv_[i][k]) != 0) y[k] += cost[basis_[i]] * binv_[i][k];
        }
      }
      std::size_t entering = cols_.size();
      Rational most;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (is_basic_[j]) continue;
        d = cost[j];
        for (const auto& [r, a] : cols_[j]) {
          if (sgn(y[r]) != 0) d -= y[r] * a;
        }
        if (sgn(d) >= 0) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (entering == cols_.size() || d < most) {
          entering = j;
          most = d;
        }
      }
      if (entering == cols_.size()) return Result::optimal;

      column_in_basis(entering, u);
      std::size_t leave = m;
      Rational best;
      Rational ratio;
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(u[i]) <= 0) continue;
        ratio = xb_[i] / u[i];
        if (leave == m || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return Result::unbounded;
      if (sgn(best) == 0) {
        if (++stalled > m) bland = true;
      } else {
        stalled = 0;
        bland = false;
      }
      pivot(leave, entering, u);
    }
  }

  // Pivots basic artificials out on zero-level rows where a structural or
  // slack column has a nonzero entry; rows with none are redundant and keep
  // their artificial at zero.
  void drive_out_artificials() {
    const std::size_t m = rhs_.size();
    std::vector<Rational> u(m);
    for (std::size_t r = 0; r < m; ++r) {
      if (basis_[r] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (is_basic_[j]) continue;
        Rational entry = 0;
        for (const auto& [row, a] : cols_[j]) entry += binv_[r][row] * a;
        if (sgn(entry) != 0) {
          column_in_basis(j, u);
          pivot(r, j, u);
          break;
        }
      }
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) v += cost[basis_[i]] * xb_[i];
    return v;
  }

  std::vector<Rational> point() const {
    std::vector<Rational> x(cols_.size(), Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i) x[basis_[i]] = xb_[i];
    return x;
  }

 private:
  void column_in_basis(std::size_t j, std::vector<Rational>& u) const {
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = 0;
      for (const auto& [r, a] : cols_[j]) {
        if (sgn(binv_[i][r]) != 0) u[i] += binv_[i][r] * a;
      }
    }
  }

  void pivot(std::size_t r, std::size_t entering, const std::vector<Rational>& u) {
    const std::size_t m = rhs_.size();
    Rational piv = u[r];
    for (auto& v : binv_[r]) {
      if (sgn(v) != 0) v /= piv;
    }
    xb_[r] /= piv;
    Rational f;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(u[i]) == 0) continue;
      f = u[i];
      for (std::size_t k = 0; k < m; ++k) {
        if (sgn(binv_[r][k]) != 0) binv_[i][k] -= f * binv_[r][k];
      }
      xb_[i] -= f * xb_[r];
    }
    is_basic_[basis_[r]] = false;
    is_basic_[entering] = true;
    basis_[r] = entering;
  }

  std::vector<Column> cols_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::size_t first_artificial_;
  std::vector<bool> is_basic_;
  std::vector<std::vector<Rational>> binv_;
  std::vector<Rational> xb_;
};

}  // namespace detail

// Variables are implicitly nonnegative. Columns identical in objective and
// constraint coefficients are merged onto their lowest index before solving,
// so a returned witness only uses the first of any such group.
inline LPOutcome solve(std::span<const Rational> objective, Sense sense,
                       std::span<const LinearConstraint> constraints) {
  const std::size_t n = objective.size();
  const std::size_t m = constraints.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (constraints[i].coefficients.size() != n) {
      throw std::invalid_argument("constraint " + std::to_string(i) + " has " +
                                  std::to_string(constraints[i].coefficients.size()) +
                                  " coefficients; objective has " + std::to_string(n));
    }
  }

  // Row normalization: nonnegative right-hand sides.
  std::vector<int> row_sign(m, 1);
  std::vector<Relation> rel(m);
  std::vector<Rational> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    rel[i] = constraints[i].relation;
    rhs[i] = constraints[i].bound;
    if (sgn(rhs[i]) < 0) {
      row_sign[i] = -1;
      rhs[i] = -rhs[i];
      if (rel[i] == Relation::ge) rel[i] = Relation::le;
      else if (rel[i] == Relation::le) rel[i] = Relation::ge;
    }
  }

  // Merge duplicate columns.
  std::vector<std::size_t> kept;
  {
    std::map<std::string, std::size_t> seen;
    std::string key;
    for (std::size_t j = 0; j < n; ++j) {
      key = objective[j].get_str();
      for (std::size_t i = 0; i < m; ++i) {
        key += ';';
        if (sgn(constraints[i].coefficients[j]) != 0) key += constraints[i].coefficients[j].get_str();
      }
      if (seen.emplace(key, j).second) kept.push_back(j);
    }
  }

  std::vector<detail::RevisedSimplex::Column> cols;
  std::vector<Rational> phase2_cost;
  for (std::size_t j : kept) {
    detail::RevisedSimplex::Column col;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& a = constraints[i].coefficients[j];
      if (sgn(a) != 0) col.emplace_back(i, row_sign[i] < 0 ? Rational(-a) : a);
    }
    cols.push_back(std::move(col));
    phase2_cost.push_back(sense == Sense::maximize ? Rational(-objective[j]) : objective[j]);
  }
  std::vector<std::size_t> basis(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (rel[i] == Relation::eq) continue;
    bool slack = rel[i] == Relation::le;
    cols.push_back({{i, Rational(slack ? 1 : -1)}});
    phase2_cost.emplace_back(0);
    if (slack) basis[i] = cols.size() - 1;
  }
  const std::size_t first_artificial = cols.size();
  std::vector<Rational> phase1_cost(cols.size(), Rational(0));
  bool needs_phase1 = false;
  for (std::size_t i = 0; i < m; ++i) {
    if (rel[i] == Relation::le) continue;
    cols.push_back({{i, Rational(1)}});
    basis[i] = cols.size() - 1;
    phase1_cost.emplace_back(1);
    phase2_cost.emplace_back(0);
    needs_phase1 = true;
  }

  detail::RevisedSimplex simplex(std::move(cols), rhs, basis, first_artificial);
  LPOutcome out;
  if (needs_phase1) {
    simplex.minimize(phase1_cost);
    if (sgn(simplex.objective(phase1_cost)) > 0) {
      out.status = LPStatus::infeasible;
      return out;
    }
    simplex.drive_out_artificials();
  }
  if (simplex.minimize(phase2_cost) == detail::RevisedSimplex::Result::unbounded) {
    out.status = LPStatus::unbounded;
    return out;
  }

  auto x = simplex.point();
  out.status = LPStatus::optimal;
  out.witness.assign(n, Rational(0));
  for (std::size_t k = 0; k < kept.size(); ++k) out.witness[kept[k]] = x[k];
  out.value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(out.witness[j]) != 0) out.value += objective[j] * out.witness[j];
  }
  return out;
}

// Feasibility only: zero objective.
inline LPOutcome feasible_point(std::size_t variables, std::span<const LinearConstraint> constraints) {
  std::vector<Rational> zero(variables, Rational(0));
  return solve(zero, Sense::minimize, constraints);
}

struct ProbabilityBound {
  Formula formula;
  Relation relation;
  Rational bound;
};

// One row per bound, with coefficient 1 on every state in the formula's
// denotation, followed by the row sum_w p({w}) = 1. Nonnegativity of the
// masses is implicit in solve(). `extra_columns` zero columns are appended
// after the 2^n state columns for callers that add auxiliary variables.
inline std::vector<LinearConstraint> probability_constraints(std::span<const ProbabilityBound> bounds,
                                                             std::span<const std::string> atom_list,
                                                             const Limits& limits = {},
                                                             std::size_t extra_columns = 0) {
  check_atom_cap(atom_list.size(), limits);
  const std::uint64_t states = std::uint64_t{1} << atom_list.size();
  std::vector<LinearConstraint> out;
  out.reserve(bounds.size() + 1);
  for (const auto& b : bounds) {
    LinearConstraint c;
    c.coefficients.assign(states + extra_columns, Rational(0));
    for (auto w : denotation(b.formula, atom_list, limits).indices()) c.coefficients[w] = 1;
    c.relation = b.relation;
    c.bound = b.bound;
    out.push_back(std::move(c));
  }
  LinearConstraint simplex;
  simplex.coefficients.assign(states + extra_columns, Rational(0));
  for (std::uint64_t w = 0; w < states; ++w) simplex.coefficients[w] = 1;
  simplex.relation = Relation::eq;
  simplex.bound = 1;
  out.push_back(std::move(simplex));
  return out;
}

}  // namespace probcons
