#ifndef WGEO_PAIRS_HPP
#define WGEO_PAIRS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "wgeo/error.hpp"
#include "wgeo/linalg.hpp"
#include "wgeo/parallel.hpp"
#include "wgeo/scalar.hpp"
#include "wgeo/space.hpp"

namespace wgeo {

/// Linear operator on the space, as a dim x dim matrix in standard
/// coordinates.
template <class S>
using Operator = Matrix<S>;

inline constexpr double kDefaultAttainmentTolerance = 1e-9;

/// The functional T -> sign * x*(T x) on operators.
struct SignedPair {
  DualityPair pair;
  int sign = 1;

  bool operator==(const SignedPair&) const = default;
  auto operator<=>(const SignedPair&) const = default;
};

template <class S>
void check_operator(const PolyhedralSpace<S>& space, const Operator<S>& t) {
  if (t.rows() != space.dim() || t.cols() != space.dim()) {
    throw DimensionMismatch("operator is " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) +
                            ", space dimension is " + std::to_string(space.dim()));
  }
}

/// x*(T x) for a canonical pair.
template <class S>
S evaluate(const PolyhedralSpace<S>& space, const DualityPair& p, const Operator<S>& t) {
  return bilinear(space.facet(p), t, space.vertex(p));
}

template <class S>
S evaluate(const PolyhedralSpace<S>& space, const SignedPair& q, const Operator<S>& t) {
  S v = evaluate(space, q.pair, t);
  return q.sign < 0 ? S(-v) : v;
}

/// Values x*(T x) over all canonical pairs, in enumeration order.
template <class S>
std::vector<S> pair_values(const PolyhedralSpace<S>& space, const Operator<S>& t) {
  check_operator(space, t);
  std::vector<S> out;
  out.reserve(space.pairs().size());
  for (const auto& p : space.pairs()) out.push_back(evaluate(space, p, t));
  return out;
}

/// Canonical duality pairs (x*, x): x a vertex, x* a facet, x*(x) = 1, one
/// representative per antipodal orbit.
template <class S>
const std::vector<DualityPair>& enumerate_pairs(const PolyhedralSpace<S>& space) {
  return space.pairs();
}

/// Numerical radius as the exact finite maximum of |x*(T x)| over the
/// canonical pairs.
template <class S>
S numerical_radius(const PolyhedralSpace<S>& space, const Operator<S>& t) {
  S best = 0;
  for (const auto& v : pair_values(space, t)) best = std::max<S>(best, abs_value(v));
  return best;
}

template <class S>
struct AttainmentSet {
  S radius = 0;
  /// Signed pairs attaining the radius, in canonical pair order.
  std::vector<SignedPair> entries;
  /// Value of every signed pair not in `entries`, maximized; -radius when only
  /// the opposite signs of entries remain.
  S runner_up = 0;
};

/// Signed pairs q with q(T) >= w(T) (1 - rel_tol). Each canonical pair
/// contributes at most the sign making its value positive.
template <class S>
AttainmentSet<S> attainment_set(const PolyhedralSpace<S>& space, const Operator<S>& t,
                                double rel_tol = kDefaultAttainmentTolerance) {
  const auto values = pair_values(space, t);
  AttainmentSet<S> out;
  for (const auto& v : values) out.radius = std::max<S>(out.radius, abs_value(v));
  if (out.radius == 0) throw DegenerateOperator("numerical radius is zero");

  S threshold = out.radius;
  if constexpr (!is_exact_v<S>) threshold = out.radius * (1.0 - rel_tol);

  out.runner_up = -out.radius;
  const auto& pairs = space.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const S& v = values[i];
    const int sign = v >= 0 ? 1 : -1;
    const S signed_v = sign > 0 ? v : S(-v);
    if (signed_v >= threshold) {
      out.entries.push_back({pairs[i], sign});
    } else {
      out.runner_up = std::max<S>(out.runner_up, signed_v);
    }
  }
  return out;
}

/// max over vertices of norm(T v).
template <class S>
S operator_norm(const PolyhedralSpace<S>& space, const Operator<S>& t) {
  check_operator(space, t);
  S best = 0;
  for (const auto& v : space.vertices()) best = std::max<S>(best, norm(space, t * v));
  return best;
}

/// Basis of the operators T with x*(T x) = 0 for every canonical pair. Empty
/// exactly when w is a norm on the operator space.
template <class S>
std::vector<Operator<S>> w_kernel(const PolyhedralSpace<S>& space) {
  const std::size_t n = space.dim();
  std::vector<std::vector<S>> rows;
  for (const auto& p : space.pairs()) {
    const auto& f = space.facet(p);
    const auto& v = space.vertex(p);
    std::vector<S> row(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) row[i * n + j] = f[i] * v[j];
    rows.push_back(std::move(row));
  }
  std::vector<Operator<S>> basis;
  for (const auto& k : null_space(std::move(rows), n * n)) {
    Operator<S> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = k[i * n + j];
    basis.push_back(std::move(m));
  }
  return basis;
}

/// min over the given operators of w(T) / ||T||. Operators with zero norm are
/// skipped.
template <class S>
S numerical_index_lower_bound(const PolyhedralSpace<S>& space, std::span<const Operator<S>> operators,
                              unsigned threads = 1) {
  if (!w_kernel(space).empty()) throw NormFailure("numerical radius is not a norm on this space");
  std::vector<S> ratios(operators.size(), S(-1));
  parallel_for(operators.size(), threads, [&](std::size_t i) {
    const S opn = operator_norm(space, operators[i]);
    if (opn == 0) return;
    ratios[i] = numerical_radius(space, operators[i]) / opn;
  });
  S best = 1;
  bool any = false;
  for (const auto& r : ratios) {
    if (r < 0) continue;
    best = any ? std::min<S>(best, r) : r;
    any = true;
  }
  if (!any) throw InvalidParameter("no nonzero operator sampled");
  return best;
}

/// Sampling diagnostic: min of w(T) over `samples` random operators with
/// entries uniform in [-1, 1], normalized to operator norm 1. This is an upper
/// bound on the numerical index, not the index itself. Deterministic in the
/// seed.
template <class S>
S numerical_index_lower_bound(const PolyhedralSpace<S>& space, std::size_t samples, std::uint64_t seed,
                              unsigned threads = 1) {
  if (samples == 0) throw InvalidParameter("samples must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const std::size_t n = space.dim();
  std::vector<Operator<S>> ops;
  ops.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    Operator<S> t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = ScalarTraits<S>::from_double(unif(rng));
    ops.push_back(std::move(t));
  }
  return numerical_index_lower_bound(space, std::span<const Operator<S>>(ops), threads);
}

}  // namespace wgeo

#endif  // WGEO_PAIRS_HPP
