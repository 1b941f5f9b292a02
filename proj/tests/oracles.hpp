#ifndef WGEO_TESTS_ORACLES_HPP
#define WGEO_TESTS_ORACLES_HPP

// Test-only reference computations. None of these route through the
// canonical pair enumeration or the simplex code they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "wgeo/space.hpp"

namespace wgeo::oracle {

/// w(T) by scanning every vertex/facet combination with |f(v)| = 1, both
/// signs, no canonicalization.
template <class S>
S brute_force_radius(const PolyhedralSpace<S>& space, const Matrix<S>& t) {
  S best = 0;
  for (const auto& v : space.vertices()) {
    const Vector<S> tv = t * v;
    for (const auto& f : space.facets()) {
      if (!near_equal(abs_value<S>(f(v)), S(1), 1e-12)) continue;
      best = std::max<S>(best, abs_value<S>(f(tv)));
    }
  }
  return best;
}

/// Number of (vertex, facet) combinations with f(v) = +1, both orbits counted.
template <class S>
std::size_t count_signed_incidences(const PolyhedralSpace<S>& space) {
  std::size_t n = 0;
  for (const auto& v : space.vertices())
    for (const auto& f : space.facets())
      if (near_equal(f(v), S(1), 1e-12)) ++n;
  return n;
}

/// On l1^n the numerical radius is the largest absolute column sum.
inline double l1_radius_closed_form(const Matrix<double>& t) {
  double best = 0;
  for (std::size_t j = 0; j < t.cols(); ++j) {
    double s = 0;
    for (std::size_t i = 0; i < t.rows(); ++i) s += std::fabs(t(i, j));
    best = std::max(best, s);
  }
  return best;
}

/// On linf^n the numerical radius is the largest absolute row sum.
inline double linf_radius_closed_form(const Matrix<double>& t) {
  double best = 0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < t.cols(); ++j) s += std::fabs(t(i, j));
    best = std::max(best, s);
  }
  return best;
}

inline Matrix<double> random_matrix(std::size_t n, std::mt19937_64& rng, double lo = -3.0, double hi = 3.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

/// An element (f, x) of the set of norm-attaining pairs: x on the unit sphere
/// (a random direction, or a random point of a random facet face when
/// `on_face`), f a random convex combination of the facets norming x.
struct SampledPair {
  Vector<double> x;
  Functional<double> f;
};

inline SampledPair sample_norming_pair(const PolyhedralSpace<double>& space, std::mt19937_64& rng, bool on_face) {
  const std::size_t n = space.dim();
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector<double> x(std::vector<double>(n, 0.0));
  if (on_face) {
    std::uniform_int_distribution<std::size_t> pick(0, space.facets().size() - 1);
    const auto& face = space.facets()[pick(rng)];
    std::vector<const Vector<double>*> touching;
    for (const auto& v : space.vertices())
      if (std::fabs(face(v) - 1.0) < 1e-9) touching.push_back(&v);
    double total = 0;
    for (const auto* v : touching) {
      const double w = u(rng) < 0.3 ? 0.0 : u(rng);
      total += w;
      for (std::size_t k = 0; k < n; ++k) x[k] += w * (*v)[k];
    }
    if (total == 0) x = *touching.front();
  } else {
    for (std::size_t k = 0; k < n; ++k) x[k] = g(rng);
  }
  double nx = 0;
  for (const auto& f : space.facets()) nx = std::max(nx, f(x));
  for (auto& c : x.coords) c /= nx;

  Functional<double> f(std::vector<double>(n, 0.0));
  double total = 0;
  for (const auto& face : space.facets()) {
    if (face(x) < 1.0 - 1e-12) continue;
    const double w = u(rng) + 1e-3;
    total += w;
    for (std::size_t k = 0; k < n; ++k) f[k] += w * face[k];
  }
  for (auto& c : f.coeffs) c /= total;
  return {x, f};
}

}  // namespace wgeo::oracle

#endif  // WGEO_TESTS_ORACLES_HPP
