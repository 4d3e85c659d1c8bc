#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hankel_lab/json_io.hpp"

using namespace hankel_lab;

TEST_CASE("complex numbers and polynomials") {
  CHECK(to_json(Complex(1.5, -2.0)) == Json::array({1.5, -2.0}));
  CHECK(complex_from_json(Json::parse("[0.25, 3]")) == Complex(0.25, 3.0));
  CHECK(complex_from_json(Json(2.0)) == Complex(2.0));
  CHECK_THROWS_AS(complex_from_json(Json::parse("[1, 2, 3]")), SpecError);
  CHECK_THROWS_AS(complex_from_json(Json("x")), SpecError);
  CHECK(to_json(Polynomial({1.0, Complex(0.0, 2.0)})) == Json::parse("[[1.0, 0.0], [0.0, 2.0]]"));
}

TEST_CASE("Blaschke products") {
  const BlaschkeProduct z3 = blaschke_from_json(Json::parse(R"({"monomial": 3})"));
  CHECK(z3.degree() == 3);
  CHECK(std::abs(z3(Complex(0.5, 0.2)) - std::pow(Complex(0.5, 0.2), 3)) < 1e-15);

  const BlaschkeProduct b(0.7, {Complex(0.1, -0.3), Complex(0.4, 0.0)});
  const BlaschkeProduct back = blaschke_from_json(to_json(b));
  CHECK(back.phase() == b.phase());
  CHECK(back.zeros() == b.zeros());

  CHECK_THROWS_AS(blaschke_from_json(Json::parse(R"({"phase": 0, "zeros": [[1.0, 0.0]]})")), SpecError);
  CHECK_THROWS_AS(blaschke_from_json(Json::parse(R"({"monomial": -1})")), SpecError);
  CHECK_THROWS_AS(blaschke_from_json(Json::parse(R"({"phase": 0, "zero": []})")), SpecError);
}

TEST_CASE("symbol specs") {
  const SymbolSpec two = symbol_spec_from_json(Json::parse(
      R"({"kind": "two_sv", "s": 3, "s_tilde": 0.5, "psi": {"monomial": 1}, "psi_tilde": {"phase": 1, "zeros": []}})"));
  CHECK(two.kind == SymbolKind::TwoSV);
  CHECK(two.s == 3.0);
  CHECK(two.s_tilde == 0.5);
  CHECK(two.psi.degree() == 1);
  CHECK(two.psi_tilde.degree() == 0);
  const SymbolSpec again = symbol_spec_from_json(to_json(two));
  CHECK(again.s == two.s);
  CHECK(again.psi.zeros() == two.psi.zeros());
  CHECK(again.psi_tilde.phase() == two.psi_tilde.phase());

  const SymbolSpec seeded = symbol_spec_from_json(Json::parse(R"({"kind": "rational", "seed": 5, "degree": 2})"));
  CHECK(seeded.seed == std::optional<std::uint64_t>(5));
  CHECK(seeded.degree == 2);

  const SymbolSpec explicit_rational =
      symbol_spec_from_json(Json::parse(R"({"kind": "rational", "numerator": [1, [0, 1]], "denominator": [1, -0.5]})"));
  CHECK(explicit_rational.numerator.degree() == 1);
  CHECK(explicit_rational.denominator.coeff(1) == Complex(-0.5));

  const SymbolSpec inner = symbol_spec_from_json(Json::parse(R"({"kind": "inner", "theta": {"monomial": 2}})"));
  CHECK(inner.theta.degree() == 2);
}

TEST_CASE("spec validation") {
  const char* bad[] = {
      R"({"kind": "two_sv", "s": 1, "s_tilde": 2, "psi": {"monomial": 1}, "psi_tilde": {"monomial": 0}})",
      R"({"kind": "two_sv", "s": 2, "psi": {"monomial": 1}, "psi_tilde": {"monomial": 0}})",
      R"({"kind": "two_sv", "s": 2, "s_tilde": 0, "psi": {"monomial": 1}, "psi_tilde": {"monomial": 0}})",
      R"({"kind": "inner"})",
      R"({"kind": "inner", "theta": {"monomial": 1}, "extra": 1})",
      R"({"kind": "real_rational"})",
      R"({"kind": "rational", "seed": -3})",
      R"({"kind": "rational", "seed": 1, "degree": 0})",
      R"({"kind": "rational", "seed": 1, "pole_margin": 0.01})",
      R"({"kind": "mystery"})",
      R"([1, 2])",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(symbol_spec_from_json(Json::parse(text)), SpecError);
  }
  CHECK_THROWS_AS(load_symbol_spec("/nonexistent/spec.json"), SpecError);
}

TEST_CASE("report fragments") {
  const SingularCluster c{2.0, 3, 1e-12, 0};
  const Json j = to_json(c);
  CHECK(j["s"] == 2.0);
  CHECK(j["multiplicity"] == 3);

  const HankelOperator op =
      HankelOperator::from_rational(RationalFunction(Polynomial({0.0, 3.0}), Polynomial({2.0, 0.0, 0.0, -1.0})), 128);
  const Json d = to_json(decompose(op, 1.0));
  CHECK(d["dominance"] == "K");
  CHECK(d["multiplicity"] == 1);
  CHECK(d["inner_factor"]["zeros"].size() == 2);
  CHECK(d.contains("residuals"));

  const Json a = to_json(aak_certificate(op, 1.0));
  CHECK(a["rank"] == 2);
  CHECK(a["phi"]["grid"].get<int>() >= 1024);
}
