#ifndef WGEO_SPACE_HPP
#define WGEO_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wgeo/error.hpp"
#include "wgeo/linalg.hpp"
#include "wgeo/scalar.hpp"
#include "wgeo/solver.hpp"

namespace wgeo {

inline constexpr double kDefaultSpaceTolerance = 1e-10;

/// A vertex/facet pair (x, x*) with x*(x) = +1, stored by index. Only the
/// canonical member of each antipodal orbit {(x*, x), (-x*, -x)} is kept: the
/// one whose vertex has a positive first nonzero coordinate.
struct DualityPair {
  std::size_t vertex_index = 0;
  std::size_t facet_index = 0;

  bool operator==(const DualityPair&) const = default;
  auto operator<=>(const DualityPair&) const = default;
};

/// Raw, unvalidated description of a polyhedral unit ball.
template <class S>
struct SpaceData {
  std::size_t dim = 0;
  std::vector<Vector<S>> vertices;
  std::vector<Functional<S>> facets;
  double tolerance = kDefaultSpaceTolerance;
};

enum class Invariant { dimension, symmetry, normalization, polarity, extremality };

inline const char* to_string(Invariant inv) {
  switch (inv) {
    case Invariant::dimension:
      return "dimension";
    case Invariant::symmetry:
      return "symmetry";
    case Invariant::normalization:
      return "normalization";
    case Invariant::polarity:
      return "polarity";
    case Invariant::extremality:
      return "extremality";
  }
  return "?";
}

struct Violation {
  Invariant invariant;
  enum class Target { vertex, facet, space } target;
  std::size_t index;
  std::string detail;

  std::string describe() const {
    std::string who = target == Target::vertex  ? "vertex " + std::to_string(index)
                      : target == Target::facet ? "facet " + std::to_string(index)
                                                : std::string("space");
    return std::string(to_string(invariant)) + " violation at " + who + ": " + detail;
  }
};

class ValidationError : public InputError {
 public:
  explicit ValidationError(std::vector<Violation> v)
      : InputError(summarize(v)), violations_(std::move(v)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string s = "invalid space";
    for (const auto& x : v) s += "; " + x.describe();
    return s;
  }
  std::vector<Violation> violations_;
};

namespace detail {

template <class S>
bool positive_first_nonzero(const Vector<S>& v, double tol) {
  for (const auto& c : v.coords) {
    if (near_zero(c, tol)) continue;
    return c > 0;
  }
  return false;
}

template <class S>
std::string coord_key(const std::vector<S>& xs) {
  std::string key;
  for (const auto& x : xs) {
    key += ScalarTraits<S>::dedup_key(x);
    key += ',';
  }
  return key;
}

template <class S>
bool contains_close(const std::vector<std::vector<S>>& pool, const std::vector<S>& x, double tol) {
  for (const auto& p : pool) {
    bool same = true;
    for (std::size_t k = 0; k < x.size() && same; ++k) same = near_equal(p[k], x[k], tol);
    if (same) return true;
  }
  return false;
}

// Is pool[idx] a convex combination of the other entries?
template <class S>
bool in_hull_of_others(const std::vector<std::vector<S>>& pool, std::size_t idx) {
  if (pool.size() < 2) return false;
  std::vector<std::vector<S>> shifted;
  shifted.reserve(pool.size() - 1);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i == idx) continue;
    std::vector<S> d(pool[i].size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = pool[i][k] - pool[idx][k];
    shifted.push_back(std::move(d));
  }
  return hull_membership(shifted).feasible;
}

}  // namespace detail

/// Checks the four ball invariants (symmetry, normalization, polarity,
/// extremality) plus shape consistency. Violations are data, never thrown.
template <class S>
std::vector<Violation> validate(const SpaceData<S>& d) {
  using T = Violation::Target;
  std::vector<Violation> out;
  const double tol = d.tolerance;

  if (d.dim == 0) out.push_back({Invariant::dimension, T::space, 0, "dimension must be positive"});
  if (d.vertices.empty()) out.push_back({Invariant::dimension, T::space, 0, "no vertices"});
  if (d.facets.empty()) out.push_back({Invariant::dimension, T::space, 0, "no facets"});
  for (std::size_t i = 0; i < d.vertices.size(); ++i)
    if (d.vertices[i].size() != d.dim)
      out.push_back({Invariant::dimension, T::vertex, i, "length " + std::to_string(d.vertices[i].size())});
  for (std::size_t i = 0; i < d.facets.size(); ++i)
    if (d.facets[i].size() != d.dim)
      out.push_back({Invariant::dimension, T::facet, i, "length " + std::to_string(d.facets[i].size())});
  if (!out.empty()) return out;

  std::vector<std::vector<S>> vpool, fpool;
  for (const auto& v : d.vertices) vpool.push_back(v.coords);
  for (const auto& f : d.facets) fpool.push_back(f.coeffs);

  for (std::size_t i = 0; i < vpool.size(); ++i)
    if (!detail::contains_close(vpool, (-d.vertices[i]).coords, tol))
      out.push_back({Invariant::symmetry, T::vertex, i, "negated vertex missing"});
  for (std::size_t i = 0; i < fpool.size(); ++i)
    if (!detail::contains_close(fpool, (-d.facets[i]).coeffs, tol))
      out.push_back({Invariant::symmetry, T::facet, i, "negated facet missing"});

  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    S best = 0;
    for (const auto& f : d.facets) best = std::max<S>(best, abs_value<S>(f(d.vertices[i])));
    if (!near_equal(best, S(1), tol))
      out.push_back({Invariant::normalization, T::vertex, i,
                     "max |f(v)| over facets is " + ScalarTraits<S>::to_string(best) + ", expected 1"});
  }

  for (std::size_t i = 0; i < d.facets.size(); ++i) {
    S best = 0;
    std::vector<std::vector<S>> touching;
    for (const auto& v : d.vertices) {
      S val = d.facets[i](v);
      best = std::max<S>(best, abs_value(val));
      if (near_equal(val, S(1), tol)) touching.push_back(v.coords);
    }
    if (!near_equal(best, S(1), tol)) {
      out.push_back({Invariant::polarity, T::facet, i,
                     "max |f(v)| over vertices is " + ScalarTraits<S>::to_string(best) + ", expected 1"});
    } else if (rank(touching) < d.dim) {
      out.push_back({Invariant::polarity, T::facet, i,
                     "attains 1 on only " + std::to_string(rank(touching)) + " independent vertices, need " +
                         std::to_string(d.dim)});
    }
  }

  for (std::size_t i = 0; i < vpool.size(); ++i)
    if (detail::in_hull_of_others(vpool, i))
      out.push_back({Invariant::extremality, T::vertex, i, "vertex is a convex combination of the others"});
  for (std::size_t i = 0; i < fpool.size(); ++i)
    if (detail::in_hull_of_others(fpool, i))
      out.push_back({Invariant::extremality, T::facet, i, "facet is a convex combination of the others"});

  return out;
}

/// Finite-dimensional real space whose unit ball is a centrally symmetric
/// polytope. Immutable; only constructible through validation.
template <class S>
class PolyhedralSpace {
 public:
  std::size_t dim() const { return data_.dim; }
  const std::vector<Vector<S>>& vertices() const { return data_.vertices; }
  const std::vector<Functional<S>>& facets() const { return data_.facets; }
  double tolerance() const { return data_.tolerance; }
  const SpaceData<S>& data() const { return data_; }

  /// Canonical duality pairs, ordered by (vertex index, facet index).
  const std::vector<DualityPair>& pairs() const { return pairs_; }

  const Vector<S>& vertex(const DualityPair& p) const { return data_.vertices[p.vertex_index]; }
  const Functional<S>& facet(const DualityPair& p) const { return data_.facets[p.facet_index]; }

  /// Validates and takes ownership. Throws ValidationError on any violation.
  static PolyhedralSpace create(SpaceData<S> d) {
    auto violations = validate(d);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return PolyhedralSpace(std::move(d));
  }

 private:
  explicit PolyhedralSpace(SpaceData<S> d) : data_(std::move(d)) {
    for (std::size_t vi = 0; vi < data_.vertices.size(); ++vi) {
      if (!detail::positive_first_nonzero(data_.vertices[vi], data_.tolerance)) continue;
      for (std::size_t fi = 0; fi < data_.facets.size(); ++fi)
        if (near_equal(data_.facets[fi](data_.vertices[vi]), S(1), data_.tolerance)) pairs_.push_back({vi, fi});
    }
  }

  SpaceData<S> data_;
  std::vector<DualityPair> pairs_;
};

/// Builds a space from explicit vertex and facet lists. Duplicates (equal
/// after rounding to 12 decimal digits, exact for rationals) are removed,
/// keeping the first occurrence.
template <class S>
PolyhedralSpace<S> from_vertices_and_facets(std::size_t dim, std::vector<Vector<S>> vertices,
                                            std::vector<Functional<S>> facets,
                                            double tolerance = kDefaultSpaceTolerance) {
  if (dim == 0) throw InvalidDimension("dimension must be positive");
  if (vertices.empty() || facets.empty()) throw InvalidParameter("vertex and facet lists must be nonempty");
  for (const auto& v : vertices)
    if (v.size() != dim) throw DimensionMismatch("vertex length differs from dimension " + std::to_string(dim));
  for (const auto& f : facets)
    if (f.size() != dim) throw DimensionMismatch("facet length differs from dimension " + std::to_string(dim));

  auto dedup = [](auto& list, auto coords_of) {
    std::set<std::string> seen;
    std::erase_if(list, [&](const auto& x) { return !seen.insert(detail::coord_key(coords_of(x))).second; });
  };
  dedup(vertices, [](const Vector<S>& v) -> const std::vector<S>& { return v.coords; });
  dedup(facets, [](const Functional<S>& f) -> const std::vector<S>& { return f.coeffs; });

  return PolyhedralSpace<S>::create({dim, std::move(vertices), std::move(facets), tolerance});
}

/// Unit ball of the l1 norm: cross-polytope vertices, sign-vector facets.
template <class S>
PolyhedralSpace<S> build_l1(std::size_t n) {
  if (n == 0) throw InvalidDimension("l1 space needs n >= 1");
  SpaceData<S> d;
  d.dim = n;
  for (std::size_t k = 0; k < n; ++k) {
    Vector<S> e(std::vector<S>(n, S(0)));
    e[k] = 1;
    d.vertices.push_back(e);
    d.vertices.push_back(-e);
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Functional<S> f(std::vector<S>(n, S(0)));
    for (std::size_t k = 0; k < n; ++k) f[k] = (mask >> (n - 1 - k)) & 1U ? S(-1) : S(1);
    d.facets.push_back(f);
  }
  return PolyhedralSpace<S>::create(std::move(d));
}

/// Unit ball of the sup norm: cube vertices, coordinate facets.
template <class S>
PolyhedralSpace<S> build_linf(std::size_t n) {
  if (n == 0) throw InvalidDimension("linf space needs n >= 1");
  SpaceData<S> d;
  d.dim = n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector<S> v(std::vector<S>(n, S(0)));
    for (std::size_t k = 0; k < n; ++k) v[k] = (mask >> (n - 1 - k)) & 1U ? S(-1) : S(1);
    d.vertices.push_back(v);
  }
  for (std::size_t k = 0; k < n; ++k) {
    Functional<S> e(std::vector<S>(n, S(0)));
    e[k] = 1;
    d.facets.push_back(e);
    d.facets.push_back(-e);
  }
  return PolyhedralSpace<S>::create(std::move(d));
}

namespace detail {

// Snaps trig values that are within rounding of a multiple of 1/2 so that
// e.g. cos(pi/2) is exactly 0.
inline double snap_half(double x) {
  double h = std::round(2.0 * x) / 2.0;
  return std::fabs(x - h) < 1e-14 ? h : x;
}

}  // namespace detail

/// Regular m-gon (m even, m >= 4) with vertices at the m-th roots of unity.
/// Each facet is the functional equal to 1 on both endpoints of an edge.
/// For exact scalars the vertices are the exact binary values of their
/// double approximations, and the facets are solved exactly from them.
template <class S>
PolyhedralSpace<S> build_regular_polygon(std::size_t m) {
  if (m < 4 || m % 2 != 0) throw InvalidParameter("regular polygon needs an even vertex count >= 4, got " + std::to_string(m));
  const std::size_t half = m / 2;
  SpaceData<S> d;
  d.dim = 2;
  d.vertices.resize(m);
  for (std::size_t k = 0; k < half; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    Vector<S> v{ScalarTraits<S>::from_double(detail::snap_half(std::cos(angle))),
                ScalarTraits<S>::from_double(detail::snap_half(std::sin(angle)))};
    d.vertices[k + half] = -v;
    d.vertices[k] = std::move(v);
  }
  d.facets.resize(m);
  for (std::size_t k = 0; k < half; ++k) {
    const auto& a = d.vertices[k];
    const auto& b = d.vertices[k + 1];
    const S det = a[0] * b[1] - b[0] * a[1];
    Functional<S> f{S((b[1] - a[1]) / det), S((a[0] - b[0]) / det)};
    d.facets[k + half] = -f;
    d.facets[k] = std::move(f);
  }
  return PolyhedralSpace<S>::create(std::move(d));
}

/// Hexagon with vertices +-(1,0), +-(1,1), +-(0,1). It is the image of the
/// regular hexagon under an invertible linear map, so all quantities that are
/// invariant under linear isomorphism (e.g. whether w is a norm) agree with
/// build_regular_polygon(6), while all coordinates are integers.
template <class S>
PolyhedralSpace<S> build_lattice_hexagon() {
  SpaceData<S> d;
  d.dim = 2;
  d.vertices = {{S(1), S(0)}, {S(1), S(1)}, {S(0), S(1)}, {S(-1), S(0)}, {S(-1), S(-1)}, {S(0), S(-1)}};
  d.facets = {{S(1), S(0)}, {S(0), S(1)}, {S(-1), S(1)}, {S(-1), S(0)}, {S(0), S(-1)}, {S(1), S(-1)}};
  return PolyhedralSpace<S>::create(std::move(d));
}

template <class S>
void check_length(const PolyhedralSpace<S>& space, std::size_t len, const char* what) {
  if (len != space.dim())
    throw DimensionMismatch(std::string(what) + " of length " + std::to_string(len) + " in a space of dimension " +
                            std::to_string(space.dim()));
}

/// max over facets of |f(v)|.
template <class S>
S norm(const PolyhedralSpace<S>& space, const Vector<S>& v) {
  check_length(space, v.size(), "vector");
  S best = 0;
  for (const auto& f : space.facets()) best = std::max<S>(best, abs_value<S>(f(v)));
  return best;
}

/// max over vertices of |f(v)|.
template <class S>
S dual_norm(const PolyhedralSpace<S>& space, const Functional<S>& f) {
  check_length(space, f.size(), "functional");
  S best = 0;
  for (const auto& v : space.vertices()) best = std::max<S>(best, abs_value<S>(f(v)));
  return best;
}

template <class S>
std::vector<Violation> validate(const PolyhedralSpace<S>& space) {
  return validate(space.data());
}

}  // namespace wgeo

#endif  // WGEO_SPACE_HPP
