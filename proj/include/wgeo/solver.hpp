#ifndef WGEO_SOLVER_HPP
#define WGEO_SOLVER_HPP

// Dense two-phase simplex method with Bland's rule, written against
// ScalarTraits so it runs unchanged in floating point and exact rationals.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "wgeo/error.hpp"
#include "wgeo/linalg.hpp"
#include "wgeo/scalar.hpp"

namespace wgeo {

/// maximize c.t  subject to  A t = b,  t >= 0.
template <class S>
struct LinearProgram {
  std::vector<S> objective;
  Matrix<S> eq_matrix;
  std::vector<S> eq_rhs;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return eq_rhs.size(); }

  void check() const {
    if (eq_matrix.cols() != objective.size() && eq_matrix.rows() != 0) {
      throw DimensionMismatch("LP matrix has " + std::to_string(eq_matrix.cols()) + " columns for " +
                              std::to_string(objective.size()) + " variables");
    }
    if (eq_matrix.rows() != eq_rhs.size()) throw DimensionMismatch("LP right-hand side length differs from row count");
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "?";
}

template <class S>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  S value = 0;
  std::vector<S> solution;
  /// Indices of the basic variables at termination (optimal case only).
  std::vector<std::size_t> basis;
};

namespace detail {

template <class S>
class Tableau {
 public:
  // rows_ holds [A | b]; cost_ holds reduced costs d_j = c_j - c_B B^-1 A_j and
  // cost_rhs_ the current objective value.
  Tableau(std::vector<std::vector<S>> rows, std::vector<std::size_t> basis, std::size_t ncols)
      : rows_(std::move(rows)), basis_(std::move(basis)), ncols_(ncols) {}

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const S& rhs(std::size_t r) const { return rows_[r][ncols_]; }
  const S& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const S& objective_value() const { return value_; }

  void set_costs(const std::vector<S>& c) {
    cost_.assign(ncols_, S(0));
    value_ = 0;
    for (std::size_t j = 0; j < ncols_; ++j) cost_[j] = c[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const S& cb = c[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < ncols_; ++j) cost_[j] -= cb * rows_[r][j];
      value_ += cb * rows_[r][ncols_];
    }
  }

  void pivot(std::size_t prow, std::size_t pcol) {
    const S piv = rows_[prow][pcol];
    for (auto& x : rows_[prow]) x /= piv;
    rows_[prow][pcol] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == prow || rows_[r][pcol] == 0) continue;
      const S f = rows_[r][pcol];
      for (std::size_t j = 0; j <= ncols_; ++j) rows_[r][j] -= f * rows_[prow][j];
      rows_[r][pcol] = 0;
    }
    if (cost_[pcol] != 0) {
      const S f = cost_[pcol];
      for (std::size_t j = 0; j < ncols_; ++j) cost_[j] -= f * rows_[prow][j];
      value_ += f * rows_[prow][ncols_];
      cost_[pcol] = 0;
    }
    basis_[prow] = pcol;
  }

  /// Bland's rule iterations over columns [0, active). Returns false when
  /// unbounded.
  bool optimize(std::size_t active) {
    const double eps = eps_value();
    const std::size_t max_iter = 50000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t enter = active;
      for (std::size_t j = 0; j < active; ++j) {
        if (clearly_greater(cost_[j], S(0), eps)) {
          enter = j;
          break;
        }
      }
      if (enter == active) return true;

      std::size_t leave = rows_.size();
      S best_ratio = 0;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!clearly_greater(rows_[r][enter], S(0), eps)) continue;
        S ratio = rows_[r][ncols_] / rows_[r][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
    throw InternalInconsistency("simplex iteration limit reached");
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  static double eps_value() {
    if constexpr (is_exact_v<S>) {
      return 0.0;
    } else {
      return ScalarTraits<S>::eps;
    }
  }

 private:
  std::vector<std::vector<S>> rows_;
  std::vector<std::size_t> basis_;
  std::size_t ncols_;
  std::vector<S> cost_;
  S value_ = 0;
};

}  // namespace detail

/// Solves the LP with a phase-one/phase-two simplex under Bland's rule.
/// Returns a basic solution when optimal; deterministic for fixed input.
template <class S>
LpResult<S> lp_solve(const LinearProgram<S>& lp) {
  lp.check();
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();
  const double eps = detail::Tableau<S>::eps_value();

  // Phase one: [A | I | b] with rows sign-flipped so b >= 0.
  std::vector<std::vector<S>> rows(m, std::vector<S>(n + m + 1, S(0)));
  double rhs_scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = lp.eq_rhs[i] < 0;
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = flip ? S(-lp.eq_matrix(i, j)) : lp.eq_matrix(i, j);
    rows[i][n + i] = 1;
    rows[i][n + m] = flip ? S(-lp.eq_rhs[i]) : lp.eq_rhs[i];
    rhs_scale = std::max(rhs_scale, to_double(abs_value(lp.eq_rhs[i])));
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  detail::Tableau<S> tab(std::move(rows), std::move(basis), n + m);
  std::vector<S> phase1_cost(n + m, S(0));
  for (std::size_t i = 0; i < m; ++i) phase1_cost[n + i] = -1;
  tab.set_costs(phase1_cost);
  tab.optimize(n + m);

  LpResult<S> result;
  if (!near_zero(tab.objective_value(), 1e-9 * rhs_scale)) {
    result.status = LpStatus::infeasible;
    return result;
  }

  // Drive artificial variables out of the basis; rows where that is impossible
  // are linearly dependent on the others and are dropped.
  for (std::size_t r = 0; r < tab.num_rows();) {
    if (tab.basis()[r] < n) {
      ++r;
      continue;
    }
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!near_zero(tab.at(r, j), eps)) {
        col = j;
        break;
      }
    }
    if (col == n) {
      tab.drop_row(r);
    } else {
      tab.pivot(r, col);
      ++r;
    }
  }

  std::vector<S> phase2_cost(n + m, S(0));
  for (std::size_t j = 0; j < n; ++j) phase2_cost[j] = lp.objective[j];
  tab.set_costs(phase2_cost);
  if (!tab.optimize(n)) {
    result.status = LpStatus::unbounded;
    return result;
  }

  result.status = LpStatus::optimal;
  result.solution.assign(n, S(0));
  for (std::size_t r = 0; r < tab.num_rows(); ++r) {
    S v = tab.rhs(r);
    if constexpr (!is_exact_v<S>) {
      if (v < 0 && v > -1e-12 * rhs_scale) v = 0;
    }
    result.solution[tab.basis()[r]] = v;
  }
  result.basis = tab.basis();
  std::sort(result.basis.begin(), result.basis.end());
  S value = 0;
  for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * result.solution[j];
  result.value = value;
  return result;
}

/// Same contract as lp_solve; spelled separately for call sites that require
/// exact arithmetic.
template <class S>
  requires(ScalarTraits<S>::exact)
LpResult<S> lp_solve_exact(const LinearProgram<S>& lp) {
  return lp_solve(lp);
}

/// Independent re-check of an optimal LP result: A t = b, t >= 0 and the
/// reported value equals c.t. Zero slack for exact scalars.
template <class S>
bool verify_lp_solution(const LinearProgram<S>& lp, const LpResult<S>& res, double tol = 1e-9) {
  if (res.status != LpStatus::optimal) return false;
  if (res.solution.size() != lp.num_vars()) return false;
  for (const auto& t : res.solution)
    if (!at_least(t, S(0), 1e-12)) return false;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    S lhs = 0;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) lhs += lp.eq_matrix(i, j) * res.solution[j];
    if (!near_equal(lhs, lp.eq_rhs[i], tol)) return false;
  }
  S value = 0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) value += lp.objective[j] * res.solution[j];
  return near_equal(value, res.value, tol);
}

template <class S>
struct HullMembership {
  bool feasible = false;
  /// Convex weights, one per input point; at most k+1 nonzero.
  std::vector<S> weights;
};

/// Decides whether the origin is a convex combination of `points` (all of
/// equal length k). When it is, returns a basic certificate.
template <class S>
HullMembership<S> hull_membership(std::span<const std::vector<S>> points) {
  if (points.empty()) throw InvalidParameter("hull_membership needs at least one point");
  const std::size_t k = points.front().size();
  for (const auto& p : points)
    if (p.size() != k) throw DimensionMismatch("hull_membership points have unequal lengths");

  const std::size_t m = points.size();
  LinearProgram<S> lp;
  lp.objective.assign(m, S(0));
  lp.eq_matrix = Matrix<S>(k + 1, m);
  lp.eq_rhs.assign(k + 1, S(0));
  for (std::size_t i = 0; i < m; ++i) {
    lp.eq_matrix(0, i) = 1;
    for (std::size_t c = 0; c < k; ++c) lp.eq_matrix(c + 1, i) = points[i][c];
  }
  lp.eq_rhs[0] = 1;

  auto res = lp_solve(lp);
  HullMembership<S> out;
  out.feasible = res.status == LpStatus::optimal;
  if (out.feasible) out.weights = std::move(res.solution);
  return out;
}

template <class S>
HullMembership<S> hull_membership(const std::vector<std::vector<S>>& points) {
  return hull_membership(std::span<const std::vector<S>>(points));
}

}  // namespace wgeo

#endif  // WGEO_SOLVER_HPP
