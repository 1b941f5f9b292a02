#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "wgeo/io.hpp"
#include "wgeo/rational.hpp"

using namespace wgeo;
using io::json;

TEST(SpaceSpec, Builders) {
  EXPECT_EQ(io::parse_space_spec<double>("l1:3").dim(), 3u);
  EXPECT_EQ(io::parse_space_spec<double>("linf:2").facets().size(), 4u);
  EXPECT_EQ(io::parse_space_spec<double>("poly:6").vertices().size(), 6u);
  EXPECT_EQ(io::parse_space_spec<Rational>("hex").vertices().size(), 6u);
  for (const char* bad : {"l2:3", "l1", "l1:x", "l1:-2", "poly:5", "hex:2", "", "file:/nonexistent/space.json"})
    EXPECT_THROW(io::parse_space_spec<double>(bad), InputError) << bad;
  EXPECT_THROW(io::parse_space_spec<double>("l1:0"), InvalidDimension);
}

TEST(SpaceJson, RoundTrip) {
  for (const auto& s : {build_l1<double>(3), build_linf<double>(2), build_regular_polygon<double>(6)}) {
    auto back = io::space_from_json<double>(json::parse(io::space_to_json(s).dump()));
    EXPECT_EQ(back.vertices(), s.vertices());
    EXPECT_EQ(back.facets(), s.facets());
  }
  auto h = build_lattice_hexagon<Rational>();
  auto back = io::space_from_json<Rational>(json::parse(io::space_to_json(h).dump()));
  EXPECT_EQ(back.vertices(), h.vertices());
  EXPECT_EQ(back.facets(), h.facets());
}

TEST(SpaceJson, FileSpecAndValidationErrors) {
  const std::string path = ::testing::TempDir() + "wgeo_space.json";
  {
    std::ofstream out(path);
    out << R"({"dim": 2, "vertices": [[1,0],[-1,0],[0,1],[0,-1]], "facets": [[1,1],[1,-1],[-1,1],[-1,-1]]})";
  }
  EXPECT_EQ(io::parse_space_spec<double>("file:" + path).pairs().size(), 4u);
  {
    std::ofstream out(path);
    out << R"({"dim": 2, "vertices": [[1,0],[-1,0],[0,1],[0,-1]], "facets": [[1,-1],[-1,1],[-1,-1]]})";
  }
  try {
    io::parse_space_spec<double>("file:" + path);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("symmetry"), std::string::npos) << e.what();
  }
  {
    std::ofstream out(path);
    out << R"({"dim": 2, "vertices": [[1,0]],)";
  }
  EXPECT_THROW(io::parse_space_spec<double>("file:" + path), InputError);
  std::remove(path.c_str());
}

TEST(Scalars, NumbersAndStrings) {
  EXPECT_DOUBLE_EQ(io::scalar_from_json<double>(json(3)), 3.0);
  EXPECT_DOUBLE_EQ(io::scalar_from_json<double>(json("3/4")), 0.75);
  EXPECT_EQ(io::scalar_from_json<Rational>(json(0.1)), Rational(1, 10));
  EXPECT_EQ(io::scalar_from_json<Rational>(json("-6/8")), Rational(-3, 4));
  EXPECT_EQ(io::scalar_from_json<Rational>(json("2.5e-1")), Rational(1, 4));
  EXPECT_EQ(io::scalar_to_json(Rational(-3, 4)), json("-3/4"));
  EXPECT_THROW(io::scalar_from_json<double>(json("abc")), InputError);
  EXPECT_THROW(io::scalar_from_json<Rational>(json("1/0")), InputError);
  EXPECT_THROW(io::scalar_from_json<double>(json::array()), InputError);
  EXPECT_THROW(io::scalar_from_json<double>(json(nullptr)), InputError);
}

TEST(Scalars, DoublesRoundTripLosslessly) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    EXPECT_EQ(json::parse(io::scalar_to_json(x).dump()).get<double>(), x);
  }
}

TEST(Operators, ShapeErrors) {
  auto s = build_l1<double>(2);
  EXPECT_NO_THROW(io::operator_from_json(s, json::parse(R"({"matrix": [[1,0],[0,1]]})")));
  EXPECT_THROW(io::operator_from_json(s, json::parse(R"({"matrix": [[1,0,0],[0,1,0]]})")), DimensionMismatch);
  EXPECT_THROW(io::operator_from_json(s, json::parse(R"({"matrix": [[1,0],[0]]})")), InputError);
  EXPECT_THROW(io::operator_from_json(s, json::parse(R"({"mat": [[1,0],[0,1]]})")), InputError);
  EXPECT_THROW(io::operator_from_json(s, json::parse(R"([1,2])")), InputError);
  EXPECT_THROW(io::subspace_from_json(s, json::parse(R"({"basis": [[[1,0],[0,1]], [[2,0],[0,2]]]})")),
               InvalidParameter);
  EXPECT_THROW(io::vectors_from_json(s, json::parse(R"({"z": [[1,0,0]]})")), DimensionMismatch);
}

TEST(Certificates, ReplayThroughJson) {
  std::mt19937_64 rng(2);
  auto s = build_linf<double>(3);
  for (int i = 0; i < 20; ++i) {
    std::vector<Matrix<double>> basis{oracle::random_matrix(3, rng), oracle::random_matrix(3, rng)};
    OperatorSubspace<double> v(s, basis);
    auto t = oracle::random_matrix(3, rng);
    auto d = distance(s, t, v);
    auto back = io::distance_from_json<double>(json::parse(io::distance_to_json(d).dump()));
    EXPECT_TRUE(verify_distance(s, t, v, back));
    EXPECT_EQ(back.value, d.value);
    EXPECT_EQ(back.lambda, d.lambda);
  }
}

TEST(Certificates, ExactReplayZeroSlack) {
  auto s = build_l1<Rational>(2);
  Matrix<Rational> t = Matrix<Rational>::from_rows({{1, 0}, {0, -1}});
  OperatorSubspace<Rational> v(s, {Matrix<Rational>::identity(2)});
  auto d = distance(s, t, v, 0.0);
  const std::string text = io::distance_to_json(d).dump();
  EXPECT_NE(text.find("\"1/2\""), std::string::npos) << text;
  auto back = io::distance_from_json<Rational>(json::parse(text));
  EXPECT_TRUE(verify_distance(s, t, v, back, 0.0));

  auto r = op_bj_subspace(s, Matrix<Rational>::identity(2), OperatorSubspace<Rational>(s, {t}));
  ASSERT_TRUE(r.orthogonal);
  auto cert = io::certificate_from_json<Rational>(json::parse(io::ortho_to_json(r).dump())["certificate"]);
  EXPECT_TRUE(verify_ortho_certificate(s, Matrix<Rational>::identity(2), OperatorSubspace<Rational>(s, {t}), cert, 0.0));
}

TEST(Certificates, MalformedEntries) {
  EXPECT_THROW(io::certificate_from_json<double>(json::parse(R"([{"vertex":0,"facet":0,"sign":2,"weight":1}])")),
               InputError);
  EXPECT_THROW(io::certificate_from_json<double>(json::parse(R"([{"vertex":-1,"facet":0,"sign":1,"weight":1}])")),
               InputError);
  EXPECT_THROW(io::certificate_from_json<double>(json::parse(R"({"vertex":0})")), InputError);
}
