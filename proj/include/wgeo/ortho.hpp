#ifndef WGEO_ORTHO_HPP
#define WGEO_ORTHO_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wgeo/error.hpp"
#include "wgeo/linalg.hpp"
#include "wgeo/pairs.hpp"
#include "wgeo/parallel.hpp"
#include "wgeo/solver.hpp"
#include "wgeo/space.hpp"

namespace wgeo {

/// Span of linearly independent operators.
template <class S>
class OperatorSubspace {
 public:
  OperatorSubspace() = default;

  /// Throws when a basis element has the wrong shape or the basis is
  /// linearly dependent.
  OperatorSubspace(const PolyhedralSpace<S>& space, std::vector<Operator<S>> basis) : basis_(std::move(basis)) {
    for (const auto& b : basis_) check_operator(space, b);
    if (rank(flatten(std::span<const Operator<S>>(basis_))) != basis_.size())
      throw InvalidParameter("subspace basis is linearly dependent");
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Operator<S>>& basis() const { return basis_; }
  const Operator<S>& operator[](std::size_t j) const { return basis_[j]; }

  /// Sum of lambda_j S_j.
  Operator<S> combine(std::span<const S> lambda, std::size_t n) const {
    Operator<S> out(n, n);
    for (std::size_t j = 0; j < basis_.size(); ++j) out += lambda[j] * basis_[j];
    return out;
  }

  /// True when t lies in the span.
  bool contains(const Operator<S>& t) const {
    std::vector<Operator<S>> ext = basis_;
    ext.push_back(t);
    return rank(flatten(std::span<const Operator<S>>(ext))) == basis_.size();
  }

 private:
  std::vector<Operator<S>> basis_;
};

template <class S>
struct WeightedPair {
  SignedPair pair;
  S weight = 0;
};

/// Convex weights over signed pairs; for orthogonality every entry attains
/// q(T) = w(T) and the weighted values vanish on each subspace basis element.
template <class S>
struct OrthoCertificate {
  std::vector<WeightedPair<S>> entries;
};

template <class S>
struct OrthoResult {
  bool orthogonal = false;
  S radius = 0;
  OrthoCertificate<S> certificate;
};

template <class S>
struct VectorOrthoResult {
  bool orthogonal = false;
  /// (facet index, weight) over the norming facets of x.
  std::vector<std::pair<std::size_t, S>> weights;
};

/// Facet indices g with g(x) = norm(x) up to relative tolerance.
template <class S>
std::vector<std::size_t> norming_facets(const PolyhedralSpace<S>& space, const Vector<S>& x,
                                        double rel_tol = kDefaultAttainmentTolerance) {
  const S nx = norm(space, x);
  if (nx == 0) throw InvalidParameter("vector must be nonzero");
  S threshold = nx;
  if constexpr (!is_exact_v<S>) threshold = nx * (1.0 - rel_tol);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.facets().size(); ++i)
    if (space.facets()[i](x) >= threshold) out.push_back(i);
  return out;
}

/// Birkhoff-James orthogonality of x to span(Z) in the space: some norming
/// functional of x (a convex combination of the norming facets) kills Z.
template <class S>
VectorOrthoResult<S> vector_bj(const PolyhedralSpace<S>& space, const Vector<S>& x, std::span<const Vector<S>> z,
                               double rel_tol = kDefaultAttainmentTolerance) {
  check_length(space, x.size(), "vector");
  for (const auto& zk : z) check_length(space, zk.size(), "direction");
  const auto facets = norming_facets(space, x, rel_tol);

  std::vector<std::vector<S>> points;
  for (auto fi : facets) {
    std::vector<S> p;
    for (const auto& zk : z) p.push_back(space.facets()[fi](zk));
    points.push_back(std::move(p));
  }
  auto hull = hull_membership(points);
  VectorOrthoResult<S> out;
  out.orthogonal = hull.feasible;
  if (hull.feasible)
    for (std::size_t i = 0; i < facets.size(); ++i)
      if (hull.weights[i] > 0) out.weights.emplace_back(facets[i], hull.weights[i]);
  return out;
}

template <class S>
VectorOrthoResult<S> vector_bj(const PolyhedralSpace<S>& space, const Vector<S>& x, const std::vector<Vector<S>>& z,
                               double rel_tol = kDefaultAttainmentTolerance) {
  return vector_bj(space, x, std::span<const Vector<S>>(z), rel_tol);
}

/// T orthogonal to the subspace in the numerical-radius norm: 0 lies in the
/// convex hull of the vectors (q(S_1), ..., q(S_n)) over the signed pairs q
/// attaining w(T).
template <class S>
OrthoResult<S> op_bj_subspace(const PolyhedralSpace<S>& space, const Operator<S>& t, const OperatorSubspace<S>& v,
                              double rel_tol = kDefaultAttainmentTolerance) {
  const auto att = attainment_set(space, t, rel_tol);
  std::vector<std::vector<S>> points;
  for (const auto& q : att.entries) {
    std::vector<S> p;
    for (const auto& s : v.basis()) p.push_back(evaluate(space, q, s));
    points.push_back(std::move(p));
  }
  auto hull = hull_membership(points);
  OrthoResult<S> out;
  out.radius = att.radius;
  out.orthogonal = hull.feasible;
  if (hull.feasible)
    for (std::size_t i = 0; i < att.entries.size(); ++i)
      if (hull.weights[i] > 0) out.certificate.entries.push_back({att.entries[i], hull.weights[i]});
  return out;
}

template <class S>
OrthoResult<S> op_bj_single(const PolyhedralSpace<S>& space, const Operator<S>& t, const Operator<S>& a,
                            double rel_tol = kDefaultAttainmentTolerance) {
  check_operator(space, a);
  // A single direction need not be nonzero, so bypass the independence check.
  std::vector<std::vector<S>> points;
  const auto att = attainment_set(space, t, rel_tol);
  for (const auto& q : att.entries) points.push_back({evaluate(space, q, a)});
  auto hull = hull_membership(points);
  OrthoResult<S> out;
  out.radius = att.radius;
  out.orthogonal = hull.feasible;
  if (hull.feasible)
    for (std::size_t i = 0; i < att.entries.size(); ++i)
      if (hull.weights[i] > 0) out.certificate.entries.push_back({att.entries[i], hull.weights[i]});
  return out;
}

/// Independent re-check of an orthogonality certificate by direct evaluation:
/// positive weights summing to 1, support <= n + 1, every entry attains
/// w(T), and the weighted values vanish on each basis element. Zero slack for
/// exact scalars.
template <class S>
bool verify_ortho_certificate(const PolyhedralSpace<S>& space, const Operator<S>& t, const OperatorSubspace<S>& v,
                              const OrthoCertificate<S>& cert, double tol = 1e-9) {
  if (cert.entries.empty() || cert.entries.size() > v.dim() + 1) return false;
  const S w = numerical_radius(space, t);
  S total = 0;
  std::vector<S> sums(v.dim(), S(0));
  for (const auto& e : cert.entries) {
    if (!(e.weight > 0)) return false;
    if (e.pair.sign != 1 && e.pair.sign != -1) return false;
    if (e.pair.pair.vertex_index >= space.vertices().size() || e.pair.pair.facet_index >= space.facets().size())
      return false;
    if (!near_equal(space.facet(e.pair.pair)(space.vertex(e.pair.pair)), S(1), space.tolerance())) return false;
    if (!near_equal(evaluate(space, e.pair, t), w, tol * std::max(1.0, to_double(w)))) return false;
    total += e.weight;
    for (std::size_t j = 0; j < v.dim(); ++j) sums[j] += e.weight * evaluate(space, e.pair, v[j]);
  }
  if (!near_equal(total, S(1), tol)) return false;
  for (const auto& s : sums)
    if (!near_zero(s, tol)) return false;
  return true;
}

template <class S>
struct GridResult {
  S minimum = 0;
  std::vector<S> argmin;
};

/// Brute-force test oracle: min over the grid [-R, R]^n with step h of
/// w(T - sum lambda_j S_j), n <= 2. Ties resolve to the lexicographically
/// smallest lambda, independent of the thread count.
template <class S>
GridResult<S> grid_oracle_min(const PolyhedralSpace<S>& space, const Operator<S>& t, const OperatorSubspace<S>& v,
                              double radius, double step, unsigned threads = 1) {
  if (v.dim() > 2) throw Unsupported("grid oracle supports subspaces of dimension <= 2");
  if (!(step > 0) || !(radius >= 0)) throw InvalidParameter("grid oracle needs step > 0 and radius >= 0");

  const auto tv = pair_values(space, t);
  std::vector<std::vector<S>> sv;
  for (const auto& s : v.basis()) sv.push_back(pair_values(space, s));

  auto value_at = [&](const S& l0, const S& l1) {
    S best = 0;
    for (std::size_t k = 0; k < tv.size(); ++k) {
      S x = tv[k];
      if (v.dim() > 0) x -= l0 * sv[0][k];
      if (v.dim() > 1) x -= l1 * sv[1][k];
      best = std::max<S>(best, abs_value(x));
    }
    return best;
  };

  if (v.dim() == 0) return {value_at(S(0), S(0)), {}};

  const auto steps = static_cast<std::size_t>(std::llround(2.0 * radius / step));
  auto coord = [&](std::size_t i) {
    return ScalarTraits<S>::from_double(-radius + static_cast<double>(i) * step);
  };
  const std::size_t inner = v.dim() == 2 ? steps + 1 : 1;

  // One row per outer coordinate; each row keeps its first strict minimum.
  std::vector<GridResult<S>> rows(steps + 1);
  parallel_for(steps + 1, threads, [&](std::size_t i) {
    const S l0 = coord(i);
    GridResult<S> best{value_at(l0, v.dim() == 2 ? coord(0) : S(0)), {}};
    std::size_t best_j = 0;
    for (std::size_t j = 1; j < inner; ++j) {
      S val = value_at(l0, coord(j));
      if (val < best.minimum) {
        best.minimum = val;
        best_j = j;
      }
    }
    best.argmin = {l0};
    if (v.dim() == 2) best.argmin.push_back(coord(best_j));
    rows[i] = std::move(best);
  });

  GridResult<S> out = rows.front();
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].minimum < out.minimum) out = rows[i];
  return out;
}

}  // namespace wgeo

#endif  // WGEO_ORTHO_HPP
