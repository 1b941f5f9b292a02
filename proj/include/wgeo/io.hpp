#ifndef WGEO_IO_HPP
#define WGEO_IO_HPP

// JSON formats:
//   space     {"dim": n, "vertices": [[...]], "facets": [[...]], "tolerance": 1e-10}
//   operator  {"matrix": [[...], ...]}
//   subspace  {"basis": [matrix, ...]}
//   vectors   {"z": [[...], ...]}
// Numbers may be JSON numbers or strings ("3/4", "0.1"). Floating-point
// results are written as JSON numbers (shortest round-trip form); exact
// results as "n/d" strings.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wgeo/approx.hpp"
#include "wgeo/error.hpp"
#include "wgeo/ortho.hpp"
#include "wgeo/pairs.hpp"
#include "wgeo/smooth.hpp"
#include "wgeo/space.hpp"

namespace wgeo::io {

using json = nlohmann::json;

template <class S>
S scalar_from_json(const json& j) {
  if (j.is_number_integer()) return ScalarTraits<S>::from_int(j.get<long>());
  if (j.is_number()) {
    if constexpr (is_exact_v<S>) {
      // Shortest round-trip text of the double, read as the decimal it names.
      return ScalarTraits<S>::parse(j.dump());
    } else {
      return j.get<double>();
    }
  }
  if (j.is_string()) return ScalarTraits<S>::parse(j.get<std::string>());
  throw InputError("expected a number, got " + std::string(j.type_name()));
}

template <class S>
json scalar_to_json(const S& x) {
  if constexpr (is_exact_v<S>) {
    return ScalarTraits<S>::to_string(x);
  } else {
    return x;
  }
}

template <class S>
std::vector<S> row_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of numbers");
  std::vector<S> out;
  for (const auto& x : j) out.push_back(scalar_from_json<S>(x));
  return out;
}

template <class S>
std::vector<std::vector<S>> rows_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of arrays");
  std::vector<std::vector<S>> out;
  for (const auto& r : j) out.push_back(row_from_json<S>(r));
  return out;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing key '") + key + "'");
  return *it;
}

template <class S>
Matrix<S> matrix_from_json(const json& j) {
  return Matrix<S>::from_rows(rows_from_json<S>(j));
}

template <class S>
json matrix_to_json(const Matrix<S>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class S>
PolyhedralSpace<S> space_from_json(const json& j) {
  const json& dim = field(j, "dim");
  if (!dim.is_number_integer() || dim.get<long>() <= 0) throw InvalidDimension("'dim' must be a positive integer");
  std::vector<Vector<S>> vertices;
  for (auto& r : rows_from_json<S>(field(j, "vertices"))) vertices.emplace_back(std::move(r));
  std::vector<Functional<S>> facets;
  for (auto& r : rows_from_json<S>(field(j, "facets"))) facets.emplace_back(std::move(r));
  double tol = kDefaultSpaceTolerance;
  if (auto it = j.find("tolerance"); it != j.end()) {
    if (!it->is_number() || it->get<double>() < 0) throw InvalidParameter("'tolerance' must be a nonnegative number");
    tol = it->get<double>();
  }
  return from_vertices_and_facets<S>(dim.get<std::size_t>(), std::move(vertices), std::move(facets), tol);
}

template <class S>
json space_to_json(const PolyhedralSpace<S>& space) {
  json out;
  out["dim"] = space.dim();
  out["vertices"] = json::array();
  for (const auto& v : space.vertices()) {
    json row = json::array();
    for (const auto& x : v.coords) row.push_back(scalar_to_json(x));
    out["vertices"].push_back(std::move(row));
  }
  out["facets"] = json::array();
  for (const auto& f : space.facets()) {
    json row = json::array();
    for (const auto& x : f.coeffs) row.push_back(scalar_to_json(x));
    out["facets"].push_back(std::move(row));
  }
  out["tolerance"] = space.tolerance();
  return out;
}

template <class S>
Operator<S> operator_from_json(const PolyhedralSpace<S>& space, const json& j) {
  auto m = matrix_from_json<S>(field(j, "matrix"));
  check_operator(space, m);
  return m;
}

template <class S>
OperatorSubspace<S> subspace_from_json(const PolyhedralSpace<S>& space, const json& j) {
  const json& basis = field(j, "basis");
  if (!basis.is_array()) throw InputError("'basis' must be an array of matrices");
  std::vector<Operator<S>> ops;
  for (const auto& m : basis) ops.push_back(matrix_from_json<S>(m));
  return OperatorSubspace<S>(space, std::move(ops));
}

template <class S>
std::vector<Vector<S>> vectors_from_json(const PolyhedralSpace<S>& space, const json& j) {
  std::vector<Vector<S>> out;
  for (auto& r : rows_from_json<S>(field(j, "z"))) {
    check_length(space, r.size(), "vector");
    out.emplace_back(std::move(r));
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

/// Resolves "l1:n", "linf:n", "poly:m", "hex" or "file:path".
template <class S>
PolyhedralSpace<S> parse_space_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto as_count = [&]() -> std::size_t {
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidParameter("space '" + spec + "' needs a nonnegative integer parameter");
    return static_cast<std::size_t>(std::stoul(arg));
  };
  if (kind == "l1") return build_l1<S>(as_count());
  if (kind == "linf") return build_linf<S>(as_count());
  if (kind == "poly") return build_regular_polygon<S>(as_count());
  if (kind == "hex" && arg.empty()) return build_lattice_hexagon<S>();
  if (kind == "file") return space_from_json<S>(read_json_file(arg));
  throw InvalidParameter("unknown space '" + spec + "' (expected l1:n, linf:n, poly:m, hex, file:path)");
}

inline json pair_to_json(const DualityPair& p) { return {{"vertex", p.vertex_index}, {"facet", p.facet_index}}; }

inline json signed_pair_to_json(const SignedPair& q) {
  return {{"vertex", q.pair.vertex_index}, {"facet", q.pair.facet_index}, {"sign", q.sign}};
}

template <class S>
json certificate_to_json(const OrthoCertificate<S>& c) {
  json out = json::array();
  for (const auto& e : c.entries) {
    json j = signed_pair_to_json(e.pair);
    j["weight"] = scalar_to_json(e.weight);
    out.push_back(std::move(j));
  }
  return out;
}

inline SignedPair signed_pair_from_json(const json& j) {
  const json& s = field(j, "sign");
  if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
    throw InputError("'sign' must be 1 or -1");
  const json& v = field(j, "vertex");
  const json& f = field(j, "facet");
  if (!v.is_number_unsigned() || !f.is_number_unsigned()) throw InputError("pair indices must be nonnegative integers");
  return {{v.get<std::size_t>(), f.get<std::size_t>()}, s.get<int>()};
}

template <class S>
OrthoCertificate<S> certificate_from_json(const json& j) {
  if (!j.is_array()) throw InputError("certificate must be an array");
  OrthoCertificate<S> out;
  for (const auto& e : j) out.entries.push_back({signed_pair_from_json(e), scalar_from_json<S>(field(e, "weight"))});
  return out;
}

template <class S>
json attainment_to_json(const AttainmentSet<S>& a) {
  json out = json::array();
  for (const auto& q : a.entries) out.push_back(signed_pair_to_json(q));
  return out;
}

template <class S>
json ortho_to_json(const OrthoResult<S>& r) {
  return {{"orthogonal", r.orthogonal}, {"w", scalar_to_json(r.radius)},
          {"certificate", certificate_to_json(r.certificate)}};
}

template <class S>
json distance_to_json(const DistanceResult<S>& d) {
  json lambda = json::array();
  for (const auto& l : d.lambda) lambda.push_back(scalar_to_json(l));
  return {{"value", scalar_to_json(d.value)},
          {"dual_value", scalar_to_json(d.dual_value)},
          {"primal_value", scalar_to_json(d.primal_value)},
          {"lambda", std::move(lambda)},
          {"certificate", certificate_to_json(d.certificate)},
          {"gap", scalar_to_json(d.duality_gap)},
          {"degenerate", d.degenerate}};
}

/// Rebuilds the parts of a distance result needed for verify_distance.
template <class S>
DistanceResult<S> distance_from_json(const json& j) {
  DistanceResult<S> d;
  d.value = scalar_from_json<S>(field(j, "value"));
  d.lambda = row_from_json<S>(field(j, "lambda"));
  d.certificate = certificate_from_json<S>(field(j, "certificate"));
  return d;
}

}  // namespace wgeo::io

#endif  // WGEO_IO_HPP
