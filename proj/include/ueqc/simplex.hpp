#pragma once

// Exact-rational two-phase simplex over a dense tableau.
//
//   maximize    c . x
//   subject to  a_i . x  (<= | >= | =)  b_i
//               x_j >= 0  or  x_j free
//
// Pricing is Dantzig's largest reduced cost and the ratio test breaks ties
// lexicographically, which rules out cycling.  Every solution carries a
// dual vector that is checked exactly by verify_certificate().

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ueqc/errors.hpp"
#include "ueqc/rational.hpp"

namespace ueqc {

enum class Sense { LE, GE, EQ };
enum class VarKind { NonNeg, Free };

struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, Rational>> coeffs;  // (variable, coefficient)
    Sense sense = Sense::LE;
    Rational rhs;
  };

  std::vector<Rational> objective;
  std::vector<VarKind> kinds;
  std::vector<Row> rows;

  int add_variable(VarKind kind, const Rational& obj = 0) {
    objective.push_back(obj);
    kinds.push_back(kind);
    return static_cast<int>(objective.size()) - 1;
  }

  void add_row(std::vector<std::pair<int, Rational>> coeffs, Sense sense,
               const Rational& rhs) {
    for (const auto& [j, c] : coeffs) {
      if (j < 0 || j >= num_variables()) throw SpecError("row refers to unknown variable");
    }
    rows.push_back(Row{std::move(coeffs), sense, rhs});
  }

  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

struct LpSolution {
  Rational objective;
  std::vector<Rational> primal;  // one per variable
  std::vector<Rational> dual;    // one per row, sign per the row's sense
  std::size_t pivots = 0;
  bool solved_dual = false;
};

struct LpOptions {
  enum class Route { Auto, Primal, Dual };
  Route route = Route::Auto;
};

/// Exact optimality check: primal feasibility, dual feasibility (y >= 0 on
/// <= rows, y <= 0 on >= rows, A^T y >= c on nonnegative variables and
/// = c on free ones) and a zero duality gap. Returns the first violation.
inline std::optional<std::string> certificate_violation(const LinearProgram& lp,
                                                        const LpSolution& sol) {
  const int n = lp.num_variables();
  const int m = lp.num_rows();
  if (static_cast<int>(sol.primal.size()) != n || static_cast<int>(sol.dual.size()) != m) {
    return "solution has the wrong shape";
  }
  for (int j = 0; j < n; ++j) {
    if (lp.kinds[j] == VarKind::NonNeg && sol.primal[j] < 0) {
      return "variable " + std::to_string(j) + " is negative";
    }
  }
  std::vector<Rational> aty(static_cast<std::size_t>(n), Rational(0));
  Rational by = 0;
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    Rational lhs = 0;
    for (const auto& [j, c] : row.coeffs) {
      lhs += c * sol.primal[j];
      aty[j] += c * sol.dual[i];
    }
    const bool ok = row.sense == Sense::LE   ? lhs <= row.rhs
                    : row.sense == Sense::GE ? lhs >= row.rhs
                                             : lhs == row.rhs;
    if (!ok) return "row " + std::to_string(i) + " violated";
    const int ysign = sgn(sol.dual[i]);
    if ((row.sense == Sense::LE && ysign < 0) || (row.sense == Sense::GE && ysign > 0)) {
      return "dual multiplier " + std::to_string(i) + " has the wrong sign";
    }
    by += row.rhs * sol.dual[i];
  }
  Rational cx = 0;
  for (int j = 0; j < n; ++j) {
    cx += lp.objective[j] * sol.primal[j];
    const Rational slack = aty[j] - lp.objective[j];
    if (lp.kinds[j] == VarKind::NonNeg ? slack < 0 : slack != 0) {
      return "dual constraint " + std::to_string(j) + " violated";
    }
  }
  if (cx != sol.objective) return "reported objective differs from c.x";
  if (cx != by) return "nonzero duality gap";
  return std::nullopt;
}

inline bool verify_certificate(const LinearProgram& lp, const LpSolution& sol) {
  return !certificate_violation(lp, sol).has_value();
}

namespace detail {

class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp, const LpOptions& opts) : opts_(opts) {
    const int n = lp.num_variables();
    const int m = lp.num_rows();
    // Structural columns.
    for (int j = 0; j < n; ++j) {
      plus_col_.push_back(ncols_++);
      minus_col_.push_back(lp.kinds[j] == VarKind::Free ? ncols_++ : -1);
    }
    flipped_.assign(m, false);
    init_col_.assign(m, -1);
    std::vector<Sense> senses(m);
    for (int i = 0; i < m; ++i) {
      senses[i] = lp.rows[i].sense;
      // a >= row with zero right side is negated too, so its slack can
      // start in the basis instead of an artificial
      const bool zero_ge = lp.rows[i].rhs == 0 && senses[i] == Sense::GE;
      if (lp.rows[i].rhs < 0 || zero_ge) {
        flipped_[i] = true;
        if (senses[i] == Sense::LE) {
          senses[i] = Sense::GE;
        } else if (senses[i] == Sense::GE) {
          senses[i] = Sense::LE;
        }
      }
    }
    // Slack / surplus columns, then artificials.
    std::vector<int> aux_col(m, -1);
    for (int i = 0; i < m; ++i) {
      if (senses[i] != Sense::EQ) aux_col[i] = ncols_++;
    }
    first_artificial_ = ncols_;
    for (int i = 0; i < m; ++i) {
      if (senses[i] == Sense::LE) {
        init_col_[i] = aux_col[i];
      } else {
        init_col_[i] = ncols_++;
      }
    }
    rows_.assign(m, std::vector<Rational>(ncols_, Rational(0)));
    rhs_.assign(m, Rational(0));
    basis_.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      const Rational sign = flipped_[i] ? -1 : 1;
      for (const auto& [j, c] : lp.rows[i].coeffs) {
        rows_[i][plus_col_[j]] += sign * c;
        if (minus_col_[j] >= 0) rows_[i][minus_col_[j]] -= sign * c;
      }
      rhs_[i] = sign * lp.rows[i].rhs;
      if (senses[i] == Sense::LE) rows_[i][aux_col[i]] = 1;
      if (senses[i] == Sense::GE) rows_[i][aux_col[i]] = -1;
      rows_[i][init_col_[i]] = 1;
      basis_[i] = init_col_[i];
    }
    cost_.assign(ncols_, Rational(0));
    for (int j = 0; j < n; ++j) {
      cost_[plus_col_[j]] = lp.objective[j];
      if (minus_col_[j] >= 0) cost_[minus_col_[j]] = -lp.objective[j];
    }
  }

  LpSolution solve(const LinearProgram& lp) {
    // Phase 1: maximize -(sum of artificials).
    if (first_artificial_ < ncols_) {
      std::vector<Rational> phase1(ncols_, Rational(0));
      for (int c = first_artificial_; c < ncols_; ++c) phase1[c] = -1;
      load_objective(phase1);
      optimize(/*allow_artificial=*/false);
      if (objective_value_ < 0) throw Infeasible("linear program is infeasible");
      drive_out_artificials();
    }
    load_objective(cost_);
    optimize(/*allow_artificial=*/false);

    LpSolution sol;
    sol.pivots = pivots_;
    std::vector<Rational> colval(ncols_, Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i) colval[basis_[i]] = rhs_[i];
    const int n = lp.num_variables();
    sol.primal.assign(n, Rational(0));
    for (int j = 0; j < n; ++j) {
      sol.primal[j] = colval[plus_col_[j]];
      if (minus_col_[j] >= 0) sol.primal[j] -= colval[minus_col_[j]];
    }
    // Initial basis columns were unit vectors with zero phase-2 cost, so
    // their reduced costs are -y.
    sol.dual.resize(lp.num_rows());
    for (int i = 0; i < lp.num_rows(); ++i) {
      Rational y = -reduced_[init_col_[i]];
      sol.dual[i] = flipped_[i] ? Rational(-y) : y;
    }
    sol.objective = 0;
    for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.primal[j];
    return sol;
  }

 private:
  void load_objective(const std::vector<Rational>& c) {
    active_cost_ = c;
    reduced_ = c;
    objective_value_ = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb == 0) continue;
      objective_value_ += cb * rhs_[i];
      const auto& row = rows_[i];
      for (int col = 0; col < ncols_; ++col) {
        if (row[col] != 0) reduced_[col] -= cb * row[col];
      }
    }
  }

  void optimize(bool allow_artificial) {
    while (true) {
      const int limit = allow_artificial ? ncols_ : first_artificial_;
      int enter = -1;
      for (int col = 0; col < limit; ++col) {
        if (reduced_[col] <= 0) continue;
        if (enter < 0 || reduced_[col] > reduced_[enter]) enter = col;
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Rational& a = rows_[i][enter];
        if (a <= 0) continue;
        Rational ratio = rhs_[i] / a;
        if (leave < 0 || ratio < best ||
            (ratio == best && lex_less(i, static_cast<std::size_t>(leave), enter))) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) throw Unbounded("linear program is unbounded");
      pivot(static_cast<std::size_t>(leave), enter);
    }
  }

  // Ties in the ratio test go to the row whose B^-1 row, scaled by the
  // pivot entry, is lexicographically smallest.  The initial basis columns
  // hold B^-1, and no two rows of it are proportional, so the choice is
  // unique and the basis sequence cannot cycle.
  bool lex_less(std::size_t i, std::size_t j, int enter) const {
    const Rational& ai = rows_[i][enter];
    const Rational& aj = rows_[j][enter];
    for (int c : init_col_) {
      const Rational lhs = rows_[i][c] * aj;
      const Rational rhs = rows_[j][c] * ai;
      if (lhs != rhs) return lhs < rhs;
    }
    return false;
  }

  void pivot(std::size_t r, int col) {
    ++pivots_;
    auto& prow = rows_[r];
    const Rational inv = Rational(1) / prow[col];
    std::vector<int> nz;
    for (int c = 0; c < ncols_; ++c) {
      if (prow[c] != 0) {
        prow[c] *= inv;
        nz.push_back(c);
      }
    }
    rhs_[r] *= inv;
    Rational factor;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      auto& row = rows_[i];
      if (row[col] == 0) continue;
      factor = row[col];
      for (int c : nz) row[c] -= factor * prow[c];
      rhs_[i] -= factor * rhs_[r];
    }
    if (reduced_[col] != 0) {
      factor = reduced_[col];
      for (int c : nz) reduced_[c] -= factor * prow[c];
      objective_value_ += factor * rhs_[r];
    }
    basis_[r] = col;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (int col = 0; col < first_artificial_; ++col) {
        if (rows_[i][col] != 0) {
          pivot(i, col);
          break;
        }
      }
      // A row with no structural entry is redundant; its artificial stays
      // basic at zero and can never re-enter.
    }
  }

  LpOptions opts_;
  int ncols_ = 0;
  int first_artificial_ = 0;
  std::vector<int> plus_col_, minus_col_, init_col_;
  std::vector<bool> flipped_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> cost_, active_cost_, reduced_;
  Rational objective_value_;
  std::size_t pivots_ = 0;
};

/// The LP dual, written again as a maximization in LinearProgram form.
/// Dual variable i belongs to primal row i; a >= row's multiplier is stored
/// negated so every dual variable is nonnegative or free.
inline LinearProgram dual_program(const LinearProgram& lp) {
  LinearProgram d;
  const int m = lp.num_rows();
  const int n = lp.num_variables();
  std::vector<std::vector<std::pair<int, Rational>>> cols(n);
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    const bool ge = row.sense == Sense::GE;
    d.add_variable(row.sense == Sense::EQ ? VarKind::Free : VarKind::NonNeg,
                   ge ? Rational(row.rhs) : Rational(-row.rhs));
    for (const auto& [j, c] : row.coeffs) {
      cols[j].emplace_back(i, ge ? Rational(-c) : c);
    }
  }
  for (int j = 0; j < n; ++j) {
    d.add_row(std::move(cols[j]),
              lp.kinds[j] == VarKind::NonNeg ? Sense::GE : Sense::EQ,
              lp.objective[j]);
  }
  return d;
}

inline std::size_t internal_columns(const LinearProgram& lp) {
  std::size_t cols = 0;
  for (auto k : lp.kinds) cols += k == VarKind::Free ? 2 : 1;
  return cols;
}

}  // namespace detail

/// Solves the LP exactly. Tall programs (more rows than columns) are solved
/// through their dual; either way the returned solution is certified
/// against the original program before it is handed back.
inline LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts = {}) {
  const bool use_dual =
      opts.route == LpOptions::Route::Dual ||
      (opts.route == LpOptions::Route::Auto &&
       static_cast<std::size_t>(lp.num_rows()) > detail::internal_columns(lp));
  LpSolution sol;
  if (!use_dual) {
    detail::Tableau t(lp, opts);
    sol = t.solve(lp);
  } else {
    const LinearProgram d = detail::dual_program(lp);
    LpSolution ds;
    try {
      detail::Tableau t(d, opts);
      ds = t.solve(d);
    } catch (const Infeasible&) {
      // Dual infeasible means the primal is unbounded or infeasible; the
      // primal route tells which.
      detail::Tableau t(lp, opts);
      sol = t.solve(lp);
      throw CertificationFailure("dual infeasible but primal solved");
    } catch (const Unbounded&) {
      throw Infeasible("linear program is infeasible");
    }
    const int m = lp.num_rows();
    const int n = lp.num_variables();
    sol.primal.resize(n);
    for (int j = 0; j < n; ++j) sol.primal[j] = -ds.dual[j];
    sol.dual.resize(m);
    for (int i = 0; i < m; ++i) {
      sol.dual[i] = lp.rows[i].sense == Sense::GE ? Rational(-ds.primal[i]) : ds.primal[i];
    }
    sol.objective = 0;
    for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.primal[j];
    sol.pivots = ds.pivots;
    sol.solved_dual = true;
  }
  if (auto why = certificate_violation(lp, sol)) {
    throw CertificationFailure("simplex certificate rejected: " + *why);
  }
  return sol;
}

}  // namespace ueqc
