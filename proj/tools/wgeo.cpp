// wgeo: command-line front end for numerical-radius geometry on polyhedral
// spaces. Results go to stdout as JSON; diagnostics go to stderr.
//
// Exit codes: 0 success, 2 input or validation error, 1 internal
// inconsistency (including a failed --verify replay).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wgeo/io.hpp"
#include "wgeo/rational.hpp"
#include "wgeo/wgeo.hpp"

namespace {

using wgeo::io::json;

struct Options {
  std::string verb;
  std::string space = "l1:2";
  std::string op;
  std::string dir;
  std::string subspace;
  std::string z;
  bool exact = false;
  double tol = wgeo::kDefaultAttainmentTolerance;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 1000;
  bool compact = false;
  bool verify = false;
};

class VerifyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(const std::string& value, const char* flag, const std::string& verb) {
  if (value.empty()) throw wgeo::InputError(verb + " needs " + flag);
}

template <class S>
class Runner {
 public:
  explicit Runner(const Options& o) : o_(o), space_(wgeo::io::parse_space_spec<S>(o.space)) {}

  json run() {
    const auto& v = o_.verb;
    if (v == "radius") return radius();
    if (v == "norm-check") return norm_check();
    if (v == "ortho") return ortho();
    if (v == "dist") return dist();
    if (v == "smooth") return smooth();
    if (v == "equiv") return equiv();
    if (v == "pairs") return pairs();
    if (v == "index") return index();
    throw wgeo::InputError("unknown command '" + v + "'");
  }

  std::string summary;

 private:
  using Op = wgeo::Operator<S>;

  Op load_op(const std::string& path) const {
    return wgeo::io::operator_from_json(space_, wgeo::io::read_json_file(path));
  }

  std::string str(const S& x) const { return wgeo::ScalarTraits<S>::to_string(x); }

  json radius() {
    require(o_.op, "--op", o_.verb);
    const Op t = load_op(o_.op);
    const S w = wgeo::numerical_radius(space_, t);
    json out{{"w", wgeo::io::scalar_to_json(w)}, {"attainment", json::array()}};
    if (w != 0) out["attainment"] = wgeo::io::attainment_to_json(wgeo::attainment_set(space_, t, o_.tol));
    if (o_.verify) {
      const json back = json::parse(out.dump());
      const S wb = wgeo::io::scalar_from_json<S>(back["w"]);
      for (const auto& e : back["attainment"]) {
        const auto q = wgeo::io::signed_pair_from_json(e);
        if (!wgeo::near_equal(wgeo::evaluate(space_, q, t), wb, o_.tol * std::max(1.0, wgeo::to_double(wb))))
          throw VerifyFailure("attaining pair does not reach w");
      }
      if (!wgeo::near_equal(wgeo::numerical_radius(space_, t), wb, 0.0))
        throw VerifyFailure("w did not survive the JSON round trip");
    }
    summary = "w(T) = " + str(w);
    return out;
  }

  json norm_check() {
    const auto kernel = wgeo::w_kernel(space_);
    json k = json::array();
    for (const auto& m : kernel) k.push_back(wgeo::io::matrix_to_json(m));
    summary = kernel.empty() ? "w is a norm on operators" : "w is only a seminorm";
    return {{"w_is_norm", kernel.empty()}, {"kernel_dim", kernel.size()}, {"kernel", std::move(k)}};
  }

  wgeo::OperatorSubspace<S> load_subspace() const {
    std::vector<Op> basis;
    if (!o_.subspace.empty()) {
      auto v = wgeo::io::subspace_from_json(space_, wgeo::io::read_json_file(o_.subspace));
      basis = v.basis();
    }
    if (!o_.dir.empty()) basis.push_back(load_op(o_.dir));
    return wgeo::OperatorSubspace<S>(space_, std::move(basis));
  }

  json ortho() {
    require(o_.op, "--op", o_.verb);
    if (o_.dir.empty() && o_.subspace.empty()) throw wgeo::InputError("ortho needs --dir or --subspace");
    const Op t = load_op(o_.op);
    wgeo::OrthoResult<S> r;
    std::optional<wgeo::OperatorSubspace<S>> v;
    if (o_.subspace.empty()) {
      // A single direction may be the zero operator.
      const Op a = load_op(o_.dir);
      r = wgeo::op_bj_single(space_, t, a, o_.tol);
      if (r.orthogonal && wgeo::rank(wgeo::flatten(std::span<const Op>(&a, 1))) == 1)
        v.emplace(space_, std::vector<Op>{a});
    } else {
      v.emplace(load_subspace());
      r = wgeo::op_bj_subspace(space_, t, *v, o_.tol);
    }
    json out = wgeo::io::ortho_to_json(r);
    if (o_.verify && r.orthogonal && v) {
      const auto cert = wgeo::io::certificate_from_json<S>(json::parse(out.dump())["certificate"]);
      if (!wgeo::verify_ortho_certificate(space_, t, *v, cert, wgeo::is_exact_v<S> ? 0.0 : 1e-9))
        throw VerifyFailure("orthogonality certificate failed replay");
    }
    summary = std::string(r.orthogonal ? "orthogonal" : "not orthogonal") + ", w(T) = " + str(r.radius);
    return out;
  }

  json dist() {
    require(o_.op, "--op", o_.verb);
    require(o_.subspace, "--subspace", o_.verb);
    const Op t = load_op(o_.op);
    const auto v = load_subspace();
    const auto d = wgeo::distance(space_, t, v, wgeo::is_exact_v<S> ? 0.0 : wgeo::kDualityGapTolerance);
    json out = wgeo::io::distance_to_json(d);
    if (o_.verify) {
      const auto back = wgeo::io::distance_from_json<S>(json::parse(out.dump()));
      if (!wgeo::verify_distance(space_, t, v, back, wgeo::is_exact_v<S> ? 0.0 : 1e-8))
        throw VerifyFailure("distance certificate failed replay");
    }
    summary = "distance = " + str(d.value) + ", duality gap = " + str(d.duality_gap);
    return out;
  }

  json smooth() {
    require(o_.op, "--op", o_.verb);
    const Op t = load_op(o_.op);
    const auto r = wgeo::is_nu_smooth(space_, t, o_.tol);
    json out{{"nu_smooth", r.nu_smooth},
             {"witness", r.witness ? wgeo::io::signed_pair_to_json(*r.witness) : json(nullptr)},
             {"margin", wgeo::io::scalar_to_json(r.margin)},
             {"w", wgeo::io::scalar_to_json(r.attaining.radius)},
             {"attainment", wgeo::io::attainment_to_json(r.attaining)}};
    if (o_.verify && r.witness) {
      const auto q = wgeo::io::signed_pair_from_json(json::parse(out.dump())["witness"]);
      if (!wgeo::near_equal(wgeo::evaluate(space_, q, t), r.attaining.radius,
                            o_.tol * std::max(1.0, wgeo::to_double(r.attaining.radius))))
        throw VerifyFailure("witness does not attain w");
    }
    summary = r.nu_smooth ? "nu-smooth, margin " + str(r.margin) : "not nu-smooth";
    return out;
  }

  json equiv() {
    require(o_.op, "--op", o_.verb);
    require(o_.z, "--z", o_.verb);
    const Op t = load_op(o_.op);
    const auto z = wgeo::io::vectors_from_json(space_, wgeo::io::read_json_file(o_.z));
    const auto r = wgeo::equivalence_check(space_, t, z, o_.tol);
    summary = r.hypothesis_met ? std::string(r.agree() ? "sides agree" : "sides DISAGREE")
                               : "hypotheses not met (informational only)";
    return {{"hypothesis_met", r.hypothesis_met},
            {"nu_smooth", r.nu_smooth},
            {"witness_smooth", r.witness_smooth},
            {"witness", r.witness ? wgeo::io::signed_pair_to_json(*r.witness) : json(nullptr)},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"agree", r.agree()}};
  }

  json pairs() {
    json list = json::array();
    for (const auto& p : wgeo::enumerate_pairs(space_)) list.push_back(wgeo::io::pair_to_json(p));
    summary = std::to_string(list.size()) + " canonical pairs";
    return {{"pairs", std::move(list)}, {"count", wgeo::enumerate_pairs(space_).size()}};
  }

  json index() {
    if (!o_.seed) throw wgeo::InputError("index needs --seed");
    const S value = wgeo::numerical_index_lower_bound(space_, o_.samples, *o_.seed, wgeo::threads_from_env());
    summary = "sampled min of w(T)/||T|| = " + str(value) + " (upper bound on the numerical index)";
    return {{"value", wgeo::io::scalar_to_json(value)}, {"samples", o_.samples}, {"seed", *o_.seed}};
  }

  const Options& o_;
  wgeo::PolyhedralSpace<S> space_;
};

int emit(const json& out, const std::string& summary, const Options& o) {
  std::cout << (o.compact ? out.dump() : out.dump(2)) << '\n';
  if (!o.compact && !summary.empty()) std::cerr << summary << '\n';
  if (o.verify) std::cerr << "verified\n";
  return 0;
}

template <class S>
int dispatch(const Options& o) {
  Runner<S> r(o);
  json out = r.run();
  return emit(out, r.summary, o);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Numerical-radius geometry on polyhedral spaces"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--space", o.space, "l1:n, linf:n, poly:m, hex or file:path")->capture_default_str();
    sub->add_flag("--exact", o.exact, "exact rational arithmetic");
    sub->add_option("--tol", o.tol, "relative attainment tolerance")->capture_default_str();
    sub->add_flag("--json", o.compact, "compact JSON only, no summary");
    sub->add_flag("--verify", o.verify, "re-parse the result and re-check its certificate");
  };
  auto add_op = [&](CLI::App* sub) { sub->add_option("--op", o.op, "operator JSON file {\"matrix\": ...}"); };

  auto* radius = app.add_subcommand("radius", "numerical radius and attaining pairs");
  add_common(radius);
  add_op(radius);
  auto* norm_check = app.add_subcommand("norm-check", "is w a norm on operators of this space");
  add_common(norm_check);
  auto* ortho = app.add_subcommand("ortho", "Birkhoff-James orthogonality in the w-norm");
  add_common(ortho);
  add_op(ortho);
  ortho->add_option("--dir", o.dir, "direction operator JSON file");
  ortho->add_option("--subspace", o.subspace, "subspace JSON file {\"basis\": [...]}");
  auto* dist = app.add_subcommand("dist", "distance to a subspace with certificates");
  add_common(dist);
  add_op(dist);
  dist->add_option("--subspace", o.subspace, "subspace JSON file {\"basis\": [...]}");
  auto* smooth = app.add_subcommand("smooth", "nu-smoothness of an operator");
  add_common(smooth);
  add_op(smooth);
  auto* equiv = app.add_subcommand("equiv", "operator versus vector orthogonality check");
  add_common(equiv);
  add_op(equiv);
  equiv->add_option("--z", o.z, "vectors JSON file {\"z\": [...]}");
  auto* pairs = app.add_subcommand("pairs", "canonical vertex/facet pairs");
  add_common(pairs);
  auto* index = app.add_subcommand("index", "sampled numerical-index diagnostic");
  add_common(index);
  index->add_option("--seed", o.seed, "random seed (required)");
  index->add_option("--samples", o.samples, "number of random operators")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  o.verb = app.get_subcommands().front()->get_name();

  try {
    if (o.verb == "index" && o.exact) throw wgeo::InputError("index sampling is floating-point only");
    return o.exact ? dispatch<wgeo::Rational>(o) : dispatch<double>(o);
  } catch (const VerifyFailure& e) {
    std::cerr << "verify failed: " << e.what() << '\n';
    return 1;
  } catch (const wgeo::InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return 1;
  } catch (const wgeo::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const wgeo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
