#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hankel_lab/corpus.hpp"
#include "hankel_lab/linalg.hpp"
#include "hankel_lab/schmidt.hpp"
#include "oracles.hpp"

using namespace hankel_lab;

namespace {

// 3z / (2 - z^3): s = 2 (H dominant, dim 2) and s = 1 (K dominant, dim 1).
HankelOperator oracle_symbol(int n = 128) {
  return HankelOperator::from_rational(RationalFunction(Polynomial({0.0, 3.0}), Polynomial({2.0, 0.0, 0.0, -1.0})), n);
}

HankelOperator inner_operator(const BlaschkeProduct& theta, int n = 128) {
  return HankelOperator::from_rational(theta.as_rational(), n);
}

bool same_inner(const BlaschkeProduct& a, const BlaschkeProduct& b, double tol = 1e-7) {
  if (a.degree() != b.degree()) return false;
  const InnerComparison c = compare_inner(a, b);
  return c.zero_distance < tol && std::abs(c.phase_difference) < tol;
}

}  // namespace

TEST_CASE("dominance of the inner symbol and the oracle") {
  const BlaschkeProduct theta(0.4, {Complex(0.3, 0.2), Complex(-0.5, 0.1)});
  const HankelOperator op = inner_operator(theta);
  const DominanceResult d = classify_dominance(op, 1.0);
  CHECK(d.dominance == Dominance::H);
  CHECK(d.proj_h == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(d.proj_k < 1e-10);
  CHECK((d.ones_s - ComplexSeries::one(op.order())).norm() < 1e-10);
  CHECK((d.u_s - theta.series(op.order())).norm() < 1e-10);

  const HankelOperator o = oracle_symbol();
  CHECK(classify_dominance(o, 2.0).dominance == Dominance::H);
  const DominanceResult k = classify_dominance(o, 1.0);
  CHECK(k.dominance == Dominance::K);
  // u is orthogonal to E_H(2), so its whole mass sits in E_K(1).
  CHECK((k.u_tilde - o.u()).norm() < 1e-10);
  CHECK_THROWS_AS(classify_dominance(o, 1.5), DomainError);
}

TEST_CASE("extraction on the inner symbol") {
  const BlaschkeProduct theta(1.1, {Complex(0.2, -0.4), Complex(0.6, 0.0)});
  const SchmidtDecomposition d = decompose(inner_operator(theta), 1.0);
  CHECK(d.dominance == Dominance::H);
  CHECK(d.multiplicity == 3);
  CHECK(d.psi.degree() == 2);
  CHECK(same_inner(d.psi, theta));
  CHECK(d.theta.degree() == 2);
  CHECK(d.inner_factor.degree() == 0);
  // p is a unimodular constant.
  const CVector& p = d.p_series.coeffs();
  CHECK(std::abs(std::abs(p(0)) - 1.0) < 1e-10);
  CHECK(p.tail(p.size() - 1).norm() < 1e-10);
  CHECK(d.subspace_angle < 1e-8);
  CHECK(d.isometry_residual < 1e-8);
}

TEST_CASE("extraction on the oracle") {
  const HankelOperator op = oracle_symbol();
  const SchmidtDecomposition h = decompose(op, 2.0);
  CHECK(h.dominance == Dominance::H);
  CHECK(h.multiplicity == 2);
  CHECK(same_inner(h.psi, BlaschkeProduct::monomial(1)));
  CHECK(h.theta.degree() == 1);
  CHECK(h.inner_factor.degree() == 0);

  const SchmidtDecomposition k = decompose(op, 1.0);
  CHECK(k.dominance == Dominance::K);
  CHECK(k.multiplicity == 1);
  CHECK(same_inner(k.psi, BlaschkeProduct::monomial(1)));
  CHECK(k.theta.degree() == 0);
  // p is a multiple of 3z^2 / (2 - z^3), whose inner factor is z^2.
  const auto ref = oracle::taylor({0.0, 0.0, 3.0}, {2.0, 0.0, 0.0, -1.0}, op.order());
  CVector r(op.order());
  for (int i = 0; i < op.order(); ++i) r(i) = ref[static_cast<size_t>(i)];
  const CVector& p = k.p_series.coeffs();
  const Complex c = r.dot(p) / r.squaredNorm();
  CHECK((p - c * r).norm() < 1e-8 * p.norm());
  CHECK(k.inner_factor.degree() == 2);
  CHECK(zero_set_distance(k.inner_factor.zeros(), {0.0, 0.0}) < 1e-6);

  for (const SchmidtDecomposition* d : {&h, &k}) {
    CHECK(d->subspace_angle < 1e-6);
    CHECK(d->isometry_residual < 1e-6);
    CHECK(d->intertwining_residual < 1e-6);
    CHECK(d->companion_angle < 1e-6);
    CHECK(d->psi_relation_residual < 1e-6);
  }
}

TEST_CASE("inner-outer factorization") {
  const InnerOuter a = inner_outer_factor(RationalFunction(Polynomial({0.0, 0.0, 3.0}), Polynomial({2.0, 0.0, 0.0, -1.0})));
  CHECK(a.inner.degree() == 2);
  CHECK(zero_set_distance(a.inner.zeros(), {0.0, 0.0}) < 1e-12);
  CHECK(a.outer.numerator().degree() == 0);
  CHECK(a.modulus_residual < 1e-10);

  const InnerOuter b = inner_outer_factor(RationalFunction(Polynomial({1.0, 0.25}), Polynomial({1.0, -0.5})));
  CHECK(b.inner.degree() == 0);

  // (z - 0.5)/(2 - z): zero 0.5 goes to the inner part, |outer| = |p| on the circle.
  const RationalFunction p(Polynomial({-0.5, 1.0}), Polynomial({2.0, -1.0}));
  const InnerOuter c = inner_outer_factor(p);
  REQUIRE(c.inner.degree() == 1);
  CHECK(std::abs(c.inner.zeros()[0] - Complex(0.5)) < 1e-12);
  const CircleGrid grid(64);
  for (int j = 0; j < grid.size(); ++j) {
    const Complex z = grid.point(j);
    CHECK(std::abs(std::abs(c.outer(z)) - std::abs(p(z))) < 1e-12);
    CHECK(std::abs(c.inner(z) * c.outer(z) - p(z)) < 1e-12);
  }
  CHECK_THROWS_AS(inner_outer_factor(RationalFunction()), DomainError);
}

TEST_CASE("degree of the inner factor counts the spectrum above s") {
  const HankelOperator inner = inner_operator(BlaschkeProduct::monomial(2));
  const DegreeReport r0 = verify_degree_count(inner, decompose(inner, 1.0));
  CHECK(r0.n_s == 0);
  CHECK(r0.deg_phi == 0);
  CHECK(r0.degree_ok);

  const HankelOperator op = oracle_symbol();
  const DegreeReport r2 = verify_degree_count(op, decompose(op, 2.0));
  CHECK(r2.n_s == 0);
  CHECK(r2.deg_phi == 0);
  CHECK(r2.restricted_norm == doctest::Approx(2.0).epsilon(1e-6));

  const DegreeReport r1 = verify_degree_count(op, decompose(op, 1.0));
  CHECK(r1.n_s == 2);
  CHECK(r1.deg_phi == 2);
  CHECK(r1.degree_ok);
  CHECK(r1.restricted_norm == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r1.norm_ok);
}

TEST_CASE("phi H^2 basis is orthogonal to K_phi") {
  const BlaschkeProduct phi(0.3, {Complex(0.4, 0.1), Complex(-0.2, 0.5)});
  const int n = 64;
  const CMatrix q = truncated_multiples_basis(phi, n);
  const CMatrix k = model_space_matrix(phi, false, n);
  CHECK(q.cols() == n - 2);
  CHECK((q.adjoint() * q - CMatrix::Identity(q.cols(), q.cols())).norm() < 1e-10);
  CHECK((q.adjoint() * k).norm() < 1e-8);
}

TEST_CASE("eigenvalue signs for real symbols") {
  const HankelOperator z2 = HankelOperator(ComplexSeries::monomial(2, 64), 32);
  const SelfAdjointSplit a = selfadjoint_eigen_split(z2, 1.0);
  CHECK(a.dim_plus == 2);
  CHECK(a.dim_minus == 1);

  const SelfAdjointSplit b = selfadjoint_eigen_split(oracle_symbol(), 2.0);
  CHECK(b.dim_plus == 1);
  CHECK(b.dim_minus == 1);
  CHECK(b.angle_plus < 1e-6);
  CHECK(b.angle_minus < 1e-6);

  const HankelOperator complex_symbol(ComplexSeries::monomial(1, 16, Complex(0.0, 1.0)), 8);
  CHECK_THROWS_AS(selfadjoint_eigen_split(complex_symbol, 1.0), DomainError);
}

TEST_CASE("decompositions agree up to unimodular constants") {
  const HankelOperator op = oracle_symbol();
  const SchmidtDecomposition a = decompose(op, 1.0);
  const UniquenessReport same = verify_uniqueness(a, a);
  CHECK(same.aligned);
  CHECK(std::abs(same.c_p - Complex(1.0)) < 1e-12);
  CHECK(std::abs(same.c_theta - Complex(1.0)) < 1e-12);

  const Complex rot = std::polar(1.0, std::numbers::pi / 3);
  SchmidtDecomposition b = a;
  b.p_series = a.p_series * rot;
  b.theta = a.theta.with_phase(a.theta.phase() + std::numbers::pi / 3);
  const UniquenessReport r = verify_uniqueness(a, b);
  CHECK(r.aligned);
  CHECK(std::abs(r.c_p - rot) < 1e-12);
  CHECK(std::abs(r.c_theta - rot) < 1e-12);
}

TEST_CASE("inner parameters of the two-value family round-trip") {
  for (int dp = 0; dp <= 3; ++dp)
    for (int dt = 0; dt <= 3; ++dt) {
      CAPTURE(dp);
      CAPTURE(dt);
      const BlaschkeProduct psi = oracle_psi(dp), psi_t = oracle_psi_tilde(dt);
      const RationalFunction u = two_sv_symbol(2.0, 1.0, psi, psi_t);
      const HankelOperator op = HankelOperator::from_rational(u, choose_truncation(u));
      const InnerParameter h = extract_inner_parameter(op, 2.0);
      CHECK(h.dominance == Dominance::H);
      CHECK(same_inner(h.psi, psi, 1e-6));
      const InnerParameter k = extract_inner_parameter(op, 1.0);
      CHECK(k.dominance == Dominance::K);
      CHECK(same_inner(k.psi, psi_t, 1e-6));
    }
}
