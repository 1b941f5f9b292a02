#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wgeo/rational.hpp"
#include "wgeo/smooth.hpp"

using namespace wgeo;

namespace {

Matrix<double> mat(std::vector<std::vector<double>> rows) { return Matrix<double>::from_rows(rows); }

}  // namespace

TEST(NuSmooth, Examples) {
  auto l1 = build_l1<double>(2);
  auto a = is_nu_smooth(l1, mat({{2, 0}, {1, 1}}));
  EXPECT_TRUE(a.nu_smooth);
  ASSERT_TRUE(a.witness.has_value());
  EXPECT_EQ(*a.witness, (SignedPair{{0, 0}, 1}));
  EXPECT_EQ(l1.vertex(a.witness->pair), (Vector<double>{1, 0}));
  EXPECT_EQ(l1.facet(a.witness->pair), (Functional<double>{1, 1}));
  // w = 3; every other pair gives 1.
  EXPECT_NEAR(a.margin, 2.0 / 3.0, 1e-15);

  auto b = is_nu_smooth(l1, mat({{2, 0}, {0, 1}}));
  EXPECT_FALSE(b.nu_smooth);
  EXPECT_FALSE(b.witness.has_value());
  EXPECT_EQ(b.attaining.entries.size(), 2u);
  EXPECT_DOUBLE_EQ(b.margin, 0.0);

  for (const auto& s : {l1, build_linf<double>(3), build_regular_polygon<double>(6)})
    EXPECT_FALSE(is_nu_smooth(s, Matrix<double>::identity(s.dim())).nu_smooth);
  // A one-dimensional space has a single canonical pair.
  EXPECT_TRUE(is_nu_smooth(build_l1<double>(1), Matrix<double>::identity(1)).nu_smooth);

  EXPECT_THROW(is_nu_smooth(l1, Matrix<double>(2, 2)), DegenerateOperator);
}

TEST(NuSmooth, WitnessAttainsRadius) {
  std::mt19937_64 rng(3);
  for (const auto& s : {build_l1<double>(3), build_linf<double>(3), build_regular_polygon<double>(6)}) {
    for (int i = 0; i < 100; ++i) {
      auto t = oracle::random_matrix(s.dim(), rng);
      auto r = is_nu_smooth(s, t);
      if (!r.nu_smooth) continue;
      EXPECT_NEAR(s.facet(r.witness->pair)(s.vertex(r.witness->pair)), 1.0, 1e-12);
      EXPECT_NEAR(evaluate(s, *r.witness, t), numerical_radius(s, t), 1e-12);
      EXPECT_GT(r.margin, 0.0);
    }
  }
}

TEST(NuSmooth, ScaleInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(-5.0, 5.0);
  for (const auto& s : {build_l1<double>(2), build_linf<double>(3), build_regular_polygon<double>(6)}) {
    for (int i = 0; i < 100; ++i) {
      auto t = oracle::random_matrix(s.dim(), rng);
      double alpha = scale(rng);
      if (std::fabs(alpha) < 1e-3) alpha = 1.0;
      auto a = is_nu_smooth(s, t);
      auto b = is_nu_smooth(s, alpha * t);
      EXPECT_EQ(a.nu_smooth, b.nu_smooth);
      if (a.nu_smooth) {
        EXPECT_EQ(a.witness->pair, b.witness->pair);
        EXPECT_EQ(a.witness->sign * (alpha > 0 ? 1 : -1), b.witness->sign);
      }
    }
  }
}

TEST(NuSmooth, SmallPerturbationKeepsWitness) {
  std::mt19937_64 rng(7);
  for (const auto& s : {build_l1<double>(2), build_linf<double>(3), build_regular_polygon<double>(6)}) {
    for (int i = 0; i < 100; ++i) {
      auto t = oracle::random_matrix(s.dim(), rng);
      auto r = is_nu_smooth(s, t);
      if (!r.nu_smooth) continue;
      // Each pair value moves by at most the radius of the perturbation,
      // so a perturbation below margin * w / 4 cannot change the winner.
      const double bound = r.margin * r.attaining.radius / 4;
      auto p = oracle::random_matrix(s.dim(), rng, -1.0, 1.0);
      const double wp = numerical_radius(s, p);
      auto perturbed = is_nu_smooth(s, t + (bound / wp) * p);
      ASSERT_TRUE(perturbed.nu_smooth);
      EXPECT_EQ(*perturbed.witness, *r.witness);
      EXPECT_GT(perturbed.margin, 0.0);
    }
  }
}

TEST(SmoothPoint, Examples) {
  auto l1 = build_l1<double>(2);
  auto a = is_smooth_point(l1, Vector<double>{0.5, 0.5});
  EXPECT_TRUE(a.smooth);
  EXPECT_EQ(a.norming_facets, (std::vector<std::size_t>{0}));

  auto b = is_smooth_point(l1, Vector<double>{1, 0});
  EXPECT_FALSE(b.smooth);
  EXPECT_EQ(b.norming_facets, (std::vector<std::size_t>{0, 1}));

  auto linf = build_linf<double>(2);
  auto c = is_smooth_point(linf, Vector<double>{1, 0.3});
  EXPECT_TRUE(c.smooth);
  ASSERT_EQ(c.norming_facets.size(), 1u);
  EXPECT_EQ(linf.facets()[c.norming_facets[0]], (Functional<double>{1, 0}));

  EXPECT_THROW(is_smooth_point(l1, Vector<double>{0, 0}), InvalidParameter);
  EXPECT_THROW(is_smooth_point(l1, Vector<double>{1, 0, 0}), DimensionMismatch);
}

// In dimension >= 2 every vertex of a polytope lies on at least as many
// facets as the dimension, so no vertex is a smooth point.
TEST(SmoothPoint, VerticesNeverSmoothAboveDimensionOne) {
  for (const auto& s : {build_l1<double>(2), build_l1<double>(3), build_linf<double>(2), build_linf<double>(3),
                        build_regular_polygon<double>(6), build_regular_polygon<double>(8)}) {
    for (const auto& v : s.vertices()) {
      auto r = is_smooth_point(s, v);
      EXPECT_FALSE(r.smooth);
      EXPECT_GE(r.norming_facets.size(), s.dim());
    }
  }
  for (const auto& v : build_l1<double>(1).vertices()) EXPECT_TRUE(is_smooth_point(build_l1<double>(1), v).smooth);
}

TEST(RangeBasis, Examples) {
  auto s = build_l1<double>(2);
  auto a = operators_into_subspace_basis(s, std::span<const Vector<double>>(std::vector<Vector<double>>{{0, 1}}));
  ASSERT_EQ(a.dim(), 2u);
  EXPECT_EQ(a[0], mat({{0, 0}, {1, 0}}));
  EXPECT_EQ(a[1], mat({{0, 0}, {0, 1}}));

  std::vector<Vector<double>> both{{1, 0}, {0, 1}};
  auto b = operators_into_subspace_basis(s, std::span<const Vector<double>>(both));
  EXPECT_EQ(b.dim(), 4u);
  EXPECT_TRUE(b.contains(mat({{1, 2}, {3, 4}})));

  EXPECT_EQ(operators_into_subspace_basis(s, std::span<const Vector<double>>()).dim(), 0u);

  std::vector<Vector<double>> dep{{1, 1}, {2, 2}};
  EXPECT_THROW(operators_into_subspace_basis(s, std::span<const Vector<double>>(dep)), InvalidParameter);
}

TEST(RangeBasis, SpansOperatorsWithRangeInZ) {
  auto s = build_linf<double>(3);
  std::vector<Vector<double>> z{{1, 2, 0}, {0, 1, -1}};
  auto v = operators_into_subspace_basis(s, std::span<const Vector<double>>(z));
  EXPECT_EQ(v.dim(), 6u);
  // u (x) g for u in span(Z) lies in the subspace; e3 (x) g does not.
  Matrix<double> in(3, 3), out(3, 3);
  const std::vector<double> u{2, 3, 1};  // 2 z1 - z2
  const std::vector<double> g{0.5, -1, 2};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      in(r, c) = u[r] * g[c];
      out(r, c) = (r == 2 ? 1.0 : 0.0) * g[c];
    }
  EXPECT_TRUE(v.contains(in));
  EXPECT_FALSE(v.contains(out));
}

TEST(Equivalence, VertexWitnessFailsHypothesis) {
  auto l1 = build_l1<double>(2);
  std::vector<Vector<double>> z{{0, 1}};
  auto r = equivalence_check(l1, mat({{2, 0}, {1, 1}}), z);
  EXPECT_TRUE(r.nu_smooth);
  EXPECT_FALSE(r.witness_smooth);
  EXPECT_FALSE(r.hypothesis_met);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->pair, (DualityPair{0, 0}));
  // e1 is orthogonal to e2 in l1^2 (weights 1/2 on (1,1) and (1,-1)).
  EXPECT_TRUE(r.rhs);
  // Operators into span{e2}: q(A) = (1,1).(A e1) = A_21 can be either sign,
  // and the single attaining pair cannot balance it.
  EXPECT_FALSE(r.lhs);
  EXPECT_FALSE(r.agree());
}

TEST(Equivalence, EmptyZIsTriviallyOrthogonal) {
  auto linf = build_linf<double>(2);
  auto r = equivalence_check(linf, mat({{3, 0.5}, {0.2, 1}}), std::vector<Vector<double>>{});
  EXPECT_TRUE(r.lhs);
  EXPECT_TRUE(r.rhs);
  EXPECT_TRUE(r.agree());
}

TEST(Equivalence, NotNuSmoothStillReported) {
  auto l1 = build_l1<double>(2);
  auto r = equivalence_check(l1, Matrix<double>::identity(2), std::vector<Vector<double>>{{1, 0}});
  EXPECT_FALSE(r.nu_smooth);
  EXPECT_FALSE(r.hypothesis_met);
  ASSERT_TRUE(r.witness.has_value());
}

// In dimension one the hypotheses can hold: both vertices are smooth points
// and every nonzero operator is nu-smooth.
TEST(Equivalence, DimensionOneHypothesisHolds) {
  auto s = build_l1<double>(1);
  for (double a : {-2.0, 0.5, 3.0}) {
    Matrix<double> t(1, 1);
    t(0, 0) = a;
    auto r = equivalence_check(s, t, std::vector<Vector<double>>{{1}});
    EXPECT_TRUE(r.hypothesis_met);
    EXPECT_FALSE(r.lhs);
    EXPECT_FALSE(r.rhs);
    EXPECT_TRUE(r.agree());
  }
}

// The direction that does not need smoothness of the witness: if the
// witness vertex is not orthogonal to Z then T is not orthogonal to the
// operators into Z (take S = x0* (x) z as in the rank-one construction).
TEST(Equivalence, NonOrthogonalWitnessForcesNonOrthogonalOperator) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  int checked = 0;
  for (const auto& s : {build_linf<double>(2), build_linf<double>(3), build_regular_polygon<double>(6)}) {
    for (int i = 0; i < 200; ++i) {
      auto t = oracle::random_matrix(s.dim(), rng);
      if (!is_nu_smooth(s, t).nu_smooth) continue;
      std::vector<Vector<double>> z(1 + i % 2, Vector<double>{std::vector<double>(s.dim())});
      for (auto& v : z)
        for (auto& c : v.coords) c = g(rng);
      if (z.size() >= s.dim()) z.resize(1);
      auto r = equivalence_check(s, t, z);
      if (!r.rhs) {
        EXPECT_FALSE(r.lhs);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Equivalence, ExactArithmetic) {
  auto s = build_l1<Rational>(2);
  Matrix<Rational> t = Matrix<Rational>::from_rows({{2, 0}, {1, 1}});
  auto r = equivalence_check(s, t, std::vector<Vector<Rational>>{{0, 1}});
  EXPECT_TRUE(r.nu_smooth);
  EXPECT_FALSE(r.witness_smooth);
  EXPECT_TRUE(r.rhs);
  EXPECT_FALSE(r.lhs);
}
