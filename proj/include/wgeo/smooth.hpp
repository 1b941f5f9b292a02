#ifndef WGEO_SMOOTH_HPP
#define WGEO_SMOOTH_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wgeo/error.hpp"
#include "wgeo/linalg.hpp"
#include "wgeo/ortho.hpp"
#include "wgeo/pairs.hpp"
#include "wgeo/space.hpp"

namespace wgeo {

template <class S>
struct SmoothnessReport {
  bool nu_smooth = false;
  AttainmentSet<S> attaining;
  /// The unique attaining signed pair, when nu_smooth.
  std::optional<SignedPair> witness;
  /// (w - second best signed pair value) / w; 0 or tiny when not nu_smooth.
  S margin = 0;
};

/// Over the reals the attainment set of a nu-smooth operator is a single
/// signed pair, so classification is by its cardinality.
template <class S>
SmoothnessReport<S> is_nu_smooth(const PolyhedralSpace<S>& space, const Operator<S>& t,
                                 double rel_tol = kDefaultAttainmentTolerance) {
  SmoothnessReport<S> r;
  r.attaining = attainment_set(space, t, rel_tol);
  r.nu_smooth = r.attaining.entries.size() == 1;
  if (r.nu_smooth) r.witness = r.attaining.entries.front();
  S second = r.attaining.runner_up;
  if (!r.nu_smooth) {
    // Second largest among the attaining values; near w by construction.
    std::vector<S> vals;
    for (const auto& q : r.attaining.entries) vals.push_back(evaluate(space, q, t));
    std::sort(vals.begin(), vals.end(), std::greater<S>());
    second = vals[1];
  }
  r.margin = (r.attaining.radius - second) / r.attaining.radius;
  return r;
}

template <class S>
struct PointSmoothness {
  bool smooth = false;
  std::vector<std::size_t> norming_facets;
};

/// x is smooth iff exactly one facet norms it.
template <class S>
PointSmoothness<S> is_smooth_point(const PolyhedralSpace<S>& space, const Vector<S>& x,
                                   double rel_tol = kDefaultAttainmentTolerance) {
  check_length(space, x.size(), "vector");
  PointSmoothness<S> out;
  out.norming_facets = norming_facets(space, x, rel_tol);
  out.smooth = out.norming_facets.size() == 1;
  return out;
}

/// Basis of the operators with range in span(Z): E_{i,j} = z_j (x) e_i*, i
/// outer, j inner.
template <class S>
OperatorSubspace<S> operators_into_subspace_basis(const PolyhedralSpace<S>& space, std::span<const Vector<S>> z) {
  const std::size_t n = space.dim();
  std::vector<std::vector<S>> rows;
  for (const auto& zk : z) {
    check_length(space, zk.size(), "range vector");
    rows.push_back(zk.coords);
  }
  if (rank(rows) != z.size()) throw InvalidParameter("range vectors are linearly dependent");
  std::vector<Operator<S>> basis;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& zk : z) {
      Operator<S> e(n, n);
      for (std::size_t r = 0; r < n; ++r) e(r, i) = zk[r];
      basis.push_back(std::move(e));
    }
  }
  return OperatorSubspace<S>(space, std::move(basis));
}

template <class S>
struct EquivalenceReport {
  bool nu_smooth = false;
  bool witness_smooth = false;
  /// Both hypotheses hold; only then is lhs == rhs a theorem.
  bool hypothesis_met = false;
  std::optional<SignedPair> witness;
  bool lhs = false;  ///< T orthogonal to the operators into span(Z)
  bool rhs = false;  ///< witness vertex orthogonal to span(Z)
  bool agree() const { return lhs == rhs; }
};

/// Runs both sides of the operator-versus-vector orthogonality equivalence.
/// Sides are always computed; agreement is meaningful only when
/// hypothesis_met. When T is not nu-smooth the rhs is evaluated at the vertex
/// of its first attaining pair.
template <class S>
EquivalenceReport<S> equivalence_check(const PolyhedralSpace<S>& space, const Operator<S>& t,
                                       std::span<const Vector<S>> z,
                                       double rel_tol = kDefaultAttainmentTolerance) {
  EquivalenceReport<S> rep;
  const auto sm = is_nu_smooth(space, t, rel_tol);
  rep.nu_smooth = sm.nu_smooth;
  rep.witness = sm.nu_smooth ? sm.witness : std::optional<SignedPair>(sm.attaining.entries.front());
  const auto& x0 = space.vertex(rep.witness->pair);
  rep.witness_smooth = is_smooth_point(space, x0, rel_tol).smooth;
  rep.hypothesis_met = rep.nu_smooth && rep.witness_smooth;

  rep.lhs = op_bj_subspace(space, t, operators_into_subspace_basis(space, z), rel_tol).orthogonal;
  rep.rhs = vector_bj(space, x0, z, rel_tol).orthogonal;
  return rep;
}

template <class S>
EquivalenceReport<S> equivalence_check(const PolyhedralSpace<S>& space, const Operator<S>& t,
                                       const std::vector<Vector<S>>& z,
                                       double rel_tol = kDefaultAttainmentTolerance) {
  return equivalence_check(space, t, std::span<const Vector<S>>(z), rel_tol);
}

}  // namespace wgeo

#endif  // WGEO_SMOOTH_HPP
