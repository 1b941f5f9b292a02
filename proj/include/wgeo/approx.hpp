#ifndef WGEO_APPROX_HPP
#define WGEO_APPROX_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wgeo/error.hpp"
#include "wgeo/ortho.hpp"
#include "wgeo/pairs.hpp"
#include "wgeo/smooth.hpp"
#include "wgeo/solver.hpp"
#include "wgeo/space.hpp"

namespace wgeo {

inline constexpr double kDualityGapTolerance = 1e-8;

template <class S>
struct DualDistance {
  S value = 0;
  /// Basic optimal weights over signed pairs; support <= dim(V) + 1.
  OrthoCertificate<S> certificate;
};

template <class S>
struct PrimalDistance {
  S value = 0;
  /// Coefficients of the best approximation sum lambda_j S_j.
  std::vector<S> lambda;
};

template <class S>
struct DistanceResult {
  S value = 0;
  S dual_value = 0;
  S primal_value = 0;
  S duality_gap = 0;
  OrthoCertificate<S> certificate;
  std::vector<S> lambda;
  /// T lies in V, so the distance is 0.
  bool degenerate = false;
};

/// Distance as a maximization over convex weights on all signed pairs:
/// maximize sum t_q q(T) subject to sum t_q = 1 and sum t_q q(S_j) = 0.
template <class S>
DualDistance<S> distance_dual(const PolyhedralSpace<S>& space, const Operator<S>& t, const OperatorSubspace<S>& v) {
  const auto& pairs = space.pairs();
  const auto tv = pair_values(space, t);
  const std::size_t n = v.dim();
  const std::size_t nv = 2 * pairs.size();

  LinearProgram<S> lp;
  lp.objective.resize(nv);
  lp.eq_matrix = Matrix<S>(n + 1, nv);
  lp.eq_rhs.assign(n + 1, S(0));
  lp.eq_rhs[0] = 1;
  std::vector<std::vector<S>> sv;
  for (const auto& s : v.basis()) sv.push_back(pair_values(space, s));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    for (int sgn : {1, -1}) {
      const std::size_t col = 2 * k + (sgn < 0 ? 1 : 0);
      lp.objective[col] = sgn > 0 ? tv[k] : S(-tv[k]);
      lp.eq_matrix(0, col) = 1;
      for (std::size_t j = 0; j < n; ++j) lp.eq_matrix(j + 1, col) = sgn > 0 ? sv[j][k] : S(-sv[j][k]);
    }
  }

  auto res = lp_solve(lp);
  if (res.status != LpStatus::optimal)
    throw InternalInconsistency(std::string("dual distance LP ended ") + to_string(res.status));
  DualDistance<S> out;
  out.value = res.value;
  for (std::size_t col = 0; col < nv; ++col)
    if (res.solution[col] > 0)
      out.certificate.entries.push_back({{pairs[col / 2], col % 2 == 0 ? 1 : -1}, res.solution[col]});
  return out;
}

/// Distance as min over lambda of max over canonical pairs of
/// |q(T) - sum lambda_j q(S_j)|, solved as an LP in (r, lambda).
template <class S>
PrimalDistance<S> distance_primal(const PolyhedralSpace<S>& space, const Operator<S>& t,
                                  const OperatorSubspace<S>& v) {
  const auto& pairs = space.pairs();
  const auto tv = pair_values(space, t);
  const std::size_t n = v.dim();
  const std::size_t np = pairs.size();
  std::vector<std::vector<S>> sv;
  for (const auto& s : v.basis()) sv.push_back(pair_values(space, s));

  // Columns: r | lambda+ (n) | lambda- (n) | one surplus per row.
  const std::size_t nv = 1 + 2 * n + 2 * np;
  LinearProgram<S> lp;
  lp.objective.assign(nv, S(0));
  lp.objective[0] = -1;
  lp.eq_matrix = Matrix<S>(2 * np, nv);
  lp.eq_rhs.assign(2 * np, S(0));
  for (std::size_t k = 0; k < np; ++k) {
    for (int side : {0, 1}) {
      const std::size_t row = 2 * k + static_cast<std::size_t>(side);
      const int sgn = side == 0 ? 1 : -1;
      lp.eq_matrix(row, 0) = 1;
      for (std::size_t j = 0; j < n; ++j) {
        const S a = sgn > 0 ? sv[j][k] : S(-sv[j][k]);
        lp.eq_matrix(row, 1 + j) = a;
        lp.eq_matrix(row, 1 + n + j) = -a;
      }
      lp.eq_matrix(row, 1 + 2 * n + row) = -1;
      lp.eq_rhs[row] = sgn > 0 ? tv[k] : S(-tv[k]);
    }
  }

  auto res = lp_solve(lp);
  if (res.status != LpStatus::optimal)
    throw InternalInconsistency(std::string("primal distance LP ended ") + to_string(res.status));
  PrimalDistance<S> out;
  out.value = res.solution[0];
  out.lambda.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.lambda[j] = res.solution[1 + j] - res.solution[1 + n + j];
  return out;
}

/// Runs the dual maximization and the primal minimization and checks that
/// they agree (zero gap for exact scalars).
template <class S>
DistanceResult<S> distance(const PolyhedralSpace<S>& space, const Operator<S>& t, const OperatorSubspace<S>& v,
                           double gap_tol = kDualityGapTolerance) {
  check_operator(space, t);
  DistanceResult<S> out;
  out.degenerate = v.contains(t);
  auto dual = distance_dual(space, t, v);
  auto primal = distance_primal(space, t, v);
  out.dual_value = dual.value;
  out.primal_value = primal.value;
  out.duality_gap = abs_value<S>(dual.value - primal.value);
  if (!near_zero(out.duality_gap, gap_tol))
    throw InternalInconsistency("duality gap " + ScalarTraits<S>::to_string(out.duality_gap) + " exceeds tolerance");
  out.value = primal.value;
  out.certificate = std::move(dual.certificate);
  out.lambda = std::move(primal.lambda);
  return out;
}

/// Best approximation sum lambda_j S_j from a distance result.
template <class S>
Operator<S> best_approximation(const PolyhedralSpace<S>& space, const OperatorSubspace<S>& v,
                               const DistanceResult<S>& d) {
  return v.combine(std::span<const S>(d.lambda), space.dim());
}

/// Re-checks a distance result by direct evaluation: the dual weights are a
/// feasible convex combination with the stated value, each supporting pair
/// attains the residual's numerical radius, the residual's radius equals the
/// value, and the support is at most dim(V) + 1. Zero slack for exact scalars.
template <class S>
bool verify_distance(const PolyhedralSpace<S>& space, const Operator<S>& t, const OperatorSubspace<S>& v,
                     const DistanceResult<S>& d, double tol = 1e-8) {
  const auto& cert = d.certificate.entries;
  if (cert.empty() || cert.size() > v.dim() + 1) return false;
  if (d.lambda.size() != v.dim()) return false;
  const Operator<S> residual = t - best_approximation(space, v, d);
  const double scale = std::max(1.0, to_double(abs_value(d.value)));
  if (!near_equal(numerical_radius(space, residual), d.value, tol * scale)) return false;

  S total = 0;
  S objective = 0;
  std::vector<S> sums(v.dim(), S(0));
  for (const auto& e : cert) {
    if (!(e.weight > 0)) return false;
    if (e.pair.pair.vertex_index >= space.vertices().size() || e.pair.pair.facet_index >= space.facets().size())
      return false;
    total += e.weight;
    objective += e.weight * evaluate(space, e.pair, t);
    for (std::size_t j = 0; j < v.dim(); ++j) sums[j] += e.weight * evaluate(space, e.pair, v[j]);
    if (!near_equal(evaluate(space, e.pair, residual), d.value, tol * scale)) return false;
  }
  if (!near_equal(total, S(1), tol)) return false;
  for (const auto& s : sums)
    if (!near_zero(s, tol)) return false;
  return near_equal(objective, d.value, tol * scale);
}

template <class S>
struct SmoothDistance {
  S value = 0;
  /// The unique attaining pair of the nu-smooth residual.
  SignedPair witness;
  /// Coefficients of a best approximation whose residual is nu-smooth.
  std::vector<S> lambda;
  DistanceResult<S> distance;
};

namespace detail {

/// Largest s such that some lambda keeps every signed pair other than q at
/// most d - s on T - sum lambda_j S_j. s > 0 means the residual at that
/// lambda is attained by q alone.
template <class S>
std::pair<S, std::vector<S>> isolate_pair(const std::vector<S>& tv, const std::vector<std::vector<S>>& sv,
                                          std::size_t keep, const S& d) {
  const std::size_t n = sv.size();
  const std::size_t np = tv.size();
  // The last row caps s at d so the LP stays bounded with a single pair.
  const std::size_t rows = 2 * (np - 1) + 1;
  // Columns: s | lambda+ (n) | lambda- (n) | one slack per row.
  const std::size_t nv = 1 + 2 * n + rows;
  LinearProgram<S> lp;
  lp.objective.assign(nv, S(0));
  lp.objective[0] = 1;
  lp.eq_matrix = Matrix<S>(rows, nv);
  lp.eq_rhs.assign(rows, S(0));
  std::size_t row = 0;
  for (std::size_t k = 0; k < np; ++k) {
    if (k == keep) continue;
    for (int sgn : {1, -1}) {
      lp.eq_matrix(row, 0) = 1;
      for (std::size_t j = 0; j < n; ++j) {
        const S a = sgn > 0 ? S(-sv[j][k]) : sv[j][k];
        lp.eq_matrix(row, 1 + j) = a;
        lp.eq_matrix(row, 1 + n + j) = -a;
      }
      lp.eq_matrix(row, 1 + 2 * n + row) = 1;
      lp.eq_rhs[row] = sgn > 0 ? S(d - tv[k]) : S(d + tv[k]);
      ++row;
    }
  }
  lp.eq_matrix(row, 0) = 1;
  lp.eq_matrix(row, 1 + 2 * n + row) = 1;
  lp.eq_rhs[row] = d;
  auto res = lp_solve(lp);
  if (res.status != LpStatus::optimal) return {S(0), {}};
  std::vector<S> lambda(n);
  for (std::size_t j = 0; j < n; ++j) lambda[j] = res.solution[1 + j] - res.solution[1 + n + j];
  return {res.solution[0], std::move(lambda)};
}

}  // namespace detail

/// Single-pair distance formula, valid when some best approximation leaves a
/// nu-smooth residual: the max of q(T) over signed pairs q that vanish on
/// every basis element. Such a residual's attaining pair q kills V and has
/// q(T) = d, so each candidate q is tested by an LP that pushes every other
/// signed pair strictly below d over the set of best approximations.
/// Returns nullopt when no candidate succeeds (including T in V).
template <class S>
std::optional<SmoothDistance<S>> smooth_distance(const PolyhedralSpace<S>& space, const Operator<S>& t,
                                                 const OperatorSubspace<S>& v,
                                                 double rel_tol = kDefaultAttainmentTolerance,
                                                 double zero_tol = 1e-9) {
  auto d = distance(space, t, v);
  if (d.degenerate || !(d.value > 0)) return std::nullopt;

  const auto& pairs = space.pairs();
  const auto tv = pair_values(space, t);
  std::vector<std::vector<S>> sv;
  for (const auto& s : v.basis()) sv.push_back(pair_values(space, s));

  std::optional<S> best;
  std::optional<SmoothDistance<S>> found;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    bool killed = true;
    for (std::size_t j = 0; j < v.dim() && killed; ++j) killed = near_zero(sv[j][k], zero_tol);
    if (!killed) continue;
    const S val = abs_value(tv[k]);  // best of the two signs
    if (!best || val > *best) best = val;
    if (found || !near_equal(val, d.value, rel_tol * std::max(1.0, to_double(d.value)))) continue;

    auto [slack, lambda] = detail::isolate_pair(tv, sv, k, d.value);
    if (lambda.size() != v.dim()) continue;
    if constexpr (is_exact_v<S>) {
      if (!(slack > 0)) continue;
    } else {
      if (!(slack > rel_tol * d.value)) continue;
    }
    const Operator<S> residual = t - v.combine(std::span<const S>(lambda), space.dim());
    const auto report = is_nu_smooth(space, residual, rel_tol);
    if (!report.nu_smooth) throw InternalInconsistency("isolated pair does not make the residual nu-smooth");
    found = SmoothDistance<S>{S(0), *report.witness, std::move(lambda), d};
  }
  if (!found) return std::nullopt;
  if (!near_equal(*best, d.value, kDualityGapTolerance * std::max(1.0, to_double(d.value))))
    throw InternalInconsistency("single-pair distance " + ScalarTraits<S>::to_string(*best) +
                                " disagrees with LP distance " + ScalarTraits<S>::to_string(d.value));
  found->value = *best;
  found->distance = std::move(d);
  return found;
}

}  // namespace wgeo

#endif  // WGEO_APPROX_HPP
