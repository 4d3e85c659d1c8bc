#include "hankel_lab/json_io.hpp"

#include <fstream>
#include <set>

namespace hankel_lab {

namespace {

double number(const Json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("missing field '") + key + "'");
  if (!j.at(key).is_number()) throw SpecError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

Polynomial polynomial_from_json(const Json& j, const char* key) {
  if (!j.at(key).is_array()) throw SpecError(std::string("field '") + key + "' must be an array of coefficients");
  std::vector<Complex> c;
  for (const Json& e : j.at(key)) c.push_back(complex_from_json(e));
  return Polynomial(std::move(c));
}

void check_keys(const Json& j, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw SpecError("unexpected field '" + k + "'");
}

Json complex_array(const CVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

}  // namespace

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw SpecError("complex numbers are written as [re, im]");
}

Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (const Complex c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

Json to_json(const ComplexSeries& f) { return complex_array(f.coeffs()); }

Json to_json(const RationalFunction& r) {
  return Json{{"numerator", to_json(r.numerator())}, {"denominator", to_json(r.denominator())}};
}

Json to_json(const BlaschkeProduct& b) {
  Json zeros = Json::array();
  for (const Complex z : b.zeros()) zeros.push_back(to_json(z));
  return Json{{"phase", b.phase()}, {"zeros", zeros}};
}

BlaschkeProduct blaschke_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("a Blaschke product is an object {\"phase\", \"zeros\"} or {\"monomial\": k}");
  if (j.contains("monomial")) {
    check_keys(j, {"monomial"});
    if (!j.at("monomial").is_number_integer() || j.at("monomial").get<int>() < 0)
      throw SpecError("'monomial' must be a nonnegative integer");
    return BlaschkeProduct::monomial(j.at("monomial").get<int>());
  }
  check_keys(j, {"phase", "zeros"});
  const double phase = j.contains("phase") ? number(j, "phase") : 0.0;
  std::vector<Complex> zeros;
  if (j.contains("zeros")) {
    if (!j.at("zeros").is_array()) throw SpecError("'zeros' must be an array");
    for (const Json& z : j.at("zeros")) {
      const Complex c = complex_from_json(z);
      if (std::abs(c) >= 1.0) throw SpecError("Blaschke zeros must lie in the open unit disk");
      zeros.push_back(c);
    }
  }
  return BlaschkeProduct(phase, std::move(zeros));
}

Json to_json(const SymbolSpec& spec) {
  Json j{{"kind", to_string(spec.kind)}};
  switch (spec.kind) {
    case SymbolKind::TwoSV:
      j["s"] = spec.s;
      j["s_tilde"] = spec.s_tilde;
      j["psi"] = to_json(spec.psi);
      j["psi_tilde"] = to_json(spec.psi_tilde);
      break;
    case SymbolKind::Inner:
      j["theta"] = to_json(spec.theta);
      break;
    case SymbolKind::Rational:
    case SymbolKind::RealRational:
      if (spec.seed) {
        j["seed"] = *spec.seed;
        j["degree"] = spec.degree;
        j["pole_margin"] = spec.pole_margin;
      } else {
        j["numerator"] = to_json(spec.numerator);
        j["denominator"] = to_json(spec.denominator);
      }
      break;
  }
  return j;
}

SymbolSpec symbol_spec_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("a symbol spec is a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw SpecError("missing string field 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  SymbolSpec spec;
  auto read_seed = [&] {
    check_keys(j, {"kind", "seed", "degree", "pole_margin"});
    if (!j.at("seed").is_number_unsigned()) throw SpecError("'seed' must be a nonnegative integer");
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("degree")) {
      if (!j.at("degree").is_number_integer()) throw SpecError("'degree' must be an integer");
      spec.degree = j.at("degree").get<int>();
    }
    if (j.contains("pole_margin")) spec.pole_margin = number(j, "pole_margin");
    if (spec.degree < 1) throw SpecError("'degree' must be positive");
    if (spec.pole_margin < 0.1) throw SpecError("'pole_margin' must be at least 0.1");
  };
  if (kind == "two_sv") {
    check_keys(j, {"kind", "s", "s_tilde", "psi", "psi_tilde"});
    spec.kind = SymbolKind::TwoSV;
    spec.s = number(j, "s");
    spec.s_tilde = number(j, "s_tilde");
    if (!(spec.s_tilde > 0.0 && spec.s > spec.s_tilde)) throw SpecError("two_sv requires s > s_tilde > 0");
    if (!j.contains("psi") || !j.contains("psi_tilde")) throw SpecError("two_sv requires 'psi' and 'psi_tilde'");
    spec.psi = blaschke_from_json(j.at("psi"));
    spec.psi_tilde = blaschke_from_json(j.at("psi_tilde"));
  } else if (kind == "inner") {
    check_keys(j, {"kind", "theta"});
    spec.kind = SymbolKind::Inner;
    if (!j.contains("theta")) throw SpecError("inner requires 'theta'");
    spec.theta = blaschke_from_json(j.at("theta"));
  } else if (kind == "rational") {
    spec.kind = SymbolKind::Rational;
    if (j.contains("seed")) {
      read_seed();
    } else {
      check_keys(j, {"kind", "numerator", "denominator"});
      if (!j.contains("numerator")) throw SpecError("rational requires 'numerator' or 'seed'");
      spec.numerator = polynomial_from_json(j, "numerator");
      spec.denominator = j.contains("denominator") ? polynomial_from_json(j, "denominator") : Polynomial({1.0});
      if (spec.denominator.is_zero()) throw SpecError("denominator must be nonzero");
    }
  } else if (kind == "real_rational") {
    spec.kind = SymbolKind::RealRational;
    if (!j.contains("seed")) throw SpecError("real_rational requires 'seed'");
    read_seed();
  } else {
    throw SpecError("unknown kind '" + kind + "'");
  }
  return spec;
}

SymbolSpec load_symbol_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(path + ": " + e.what());
  }
  return symbol_spec_from_json(j);
}

Json to_json(const SingularCluster& c) {
  return Json{{"s", c.s}, {"multiplicity", c.multiplicity}, {"width", c.width}};
}

Json to_json(const SchmidtDecomposition& d) {
  Json j{{"s", d.s}, {"dominance", to_string(d.dominance)}, {"multiplicity", d.multiplicity}};
  if (d.p_rational)
    j["p"] = to_json(*d.p_rational);
  else
    j["p"] = Json{{"coefficients", to_json(d.p_series)}};
  j["theta"] = to_json(d.theta);
  j["psi"] = to_json(d.psi);
  j["inner_factor"] = to_json(d.inner_factor);
  j["inner_factor_from_winding"] = d.inner_factor_from_winding;
  j["residuals"] = Json{{"outer", d.outer_residual},
                        {"psi_relation", d.psi_relation_residual},
                        {"subspace_angle", d.subspace_angle},
                        {"isometry", d.isometry_residual},
                        {"intertwining", d.intertwining_residual},
                        {"companion_angle", d.companion_angle},
                        {"companion", d.companion_residual}};
  return j;
}

Json to_json(const InnerParameter& p) {
  return Json{{"dominance", to_string(p.dominance)},
              {"psi", to_json(p.psi)},
              {"relation_residual", p.relation_residual},
              {"projection_norm", p.projection_norm}};
}

Json to_json(const DegreeReport& r) {
  return Json{{"n_s", r.n_s},
              {"deg_phi", r.deg_phi},
              {"restricted_norm", r.restricted_norm},
              {"degree_ok", r.degree_ok},
              {"norm_ok", r.norm_ok}};
}

Json to_json(const AAKCertificate& c) {
  Json sv = Json::array();
  for (Eigen::Index i = 0; i < c.approximant_singular_values.size() && i < 8; ++i)
    sv.push_back(c.approximant_singular_values(i));
  return Json{{"s", c.s},
              {"k", c.k},
              {"rank", c.rank_estimate},
              {"error_norm", c.error_norm},
              {"approximant_leading_singular_values", sv},
              {"phi", Json{{"grid", c.phi.grid_size},
                           {"unimodularity", c.phi.unimodularity},
                           {"independence_residual", c.phi.independence_residual},
                           {"winding", c.phi.winding},
                           {"aliasing", c.phi.aliasing}}}};
}

Json to_json(const AAKReport& r) {
  return Json{{"n_s", r.n_s},
              {"rank", r.rank},
              {"deg_phi", r.deg_phi},
              {"error_norm", r.error_norm},
              {"error_deviation", r.error_deviation},
              {"kernel_residual", r.kernel_residual},
              {"ok", r.ok()},
              {"violations", r.violations}};
}

}  // namespace hankel_lab
