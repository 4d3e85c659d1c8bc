#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hankel_lab/series.hpp"
#include "oracles.hpp"

using namespace hankel_lab;

namespace {

ComplexSeries series(std::initializer_list<Complex> c, int n) {
  CVector v = CVector::Zero(n);
  int i = 0;
  for (const Complex x : c) v(i++) = x;
  return ComplexSeries(v);
}

}  // namespace

TEST_CASE("polynomial roots and arithmetic") {
  const Polynomial p = Polynomial::from_roots({Complex(0.5, 0.1), Complex(-2.0, 0.0), Complex(0.0, 1.5)}, 2.0);
  CHECK(p.degree() == 3);
  auto roots = p.roots();
  CHECK(zero_set_distance(roots, {Complex(0.5, 0.1), Complex(-2.0, 0.0), Complex(0.0, 1.5)}) < 1e-12);
  CHECK(std::abs(p(Complex(0.5, 0.1))) < 1e-13);
  const Polynomial q = p.deflate(Complex(-2.0, 0.0));
  CHECK(q.degree() == 2);
  CHECK(std::abs(q(Complex(0.0, 1.5))) < 1e-12);
  const Polynomial r = Polynomial({1.0, Complex(0.0, 2.0), 3.0}).reflected(2);
  CHECK(r.coeff(0) == Complex(3.0));
  CHECK(r.coeff(1) == Complex(0.0, -2.0));
  CHECK(r.coeff(2) == Complex(1.0));
  CHECK(Polynomial({0.0, 0.0}).is_zero());
}

TEST_CASE("multiply, shift and backshift") {
  const int n = 8;
  const ComplexSeries prod = multiply(series({1.0, 1.0}, n), series({1.0, -1.0}, n));
  CHECK((prod - series({1.0, 0.0, -1.0}, n)).norm() == 0.0);

  const ComplexSeries f = series({2.0, Complex(0, 1), 3.0, -1.0}, n);
  CHECK((multiply(f, ComplexSeries::one(n)) - f).norm() == 0.0);

  const int m = 40;
  CVector geo(m);
  for (int k = 0; k < m; ++k) geo(k) = std::pow(0.5, k);
  const ComplexSeries tel = multiply(ComplexSeries(geo), series({1.0, -0.5}, m));
  CHECK((tel - ComplexSeries::one(m)).norm() < std::pow(2.0, -m + 1));

  CHECK((shift(ComplexSeries::one(n)) - ComplexSeries::monomial(1, n)).norm() == 0.0);
  CHECK((backshift(shift(f)) - f).norm() == 0.0);
  const ComplexSeries sb = shift(backshift(f));
  CHECK(sb[0] == Complex(0.0));
  for (int k = 1; k < n; ++k) CHECK(sb[k] == f[k]);
}

TEST_CASE("Szego projection keeps the analytic frequencies") {
  const CircleGrid grid(64);
  CVector zbar(64), mixed(64), prod(64);
  for (int k = 0; k < 64; ++k) {
    const Complex z = grid.point(k);
    zbar(k) = std::conj(z);
    mixed(k) = 2.0 + std::conj(z) + 3.0 * z;
    prod(k) = z * z * std::conj(z);
  }
  CHECK(grid.szego_project(zbar, 16).norm() < 1e-14);
  const ComplexSeries m = grid.szego_project(mixed, 16);
  CHECK(std::abs(m[0] - 2.0) < 1e-14);
  CHECK(std::abs(m[1] - 3.0) < 1e-14);
  CHECK((m - series({2.0, 3.0}, 16)).norm() < 1e-13);
  CHECK((grid.szego_project(prod, 16) - ComplexSeries::monomial(1, 16)).norm() < 1e-14);
}

TEST_CASE("Taylor coefficients of rational functions") {
  const ComplexSeries geo = taylor_of_rational(RationalFunction(Polynomial({1.0}), Polynomial({1.0, -0.5})), 20);
  for (int k = 0; k < 20; ++k) CHECK(std::abs(geo[k] - std::pow(0.5, k)) < 1e-15);

  const RationalFunction u(Polynomial({0.0, 3.0}), Polynomial({2.0, 0.0, 0.0, -1.0}));
  const ComplexSeries t = taylor_of_rational(u, 12);
  const auto ref = oracle::taylor({0.0, 3.0}, {2.0, 0.0, 0.0, -1.0}, 12);
  for (int k = 0; k < 12; ++k) CHECK(std::abs(t[k] - ref[static_cast<size_t>(k)]) < 1e-15);
  CHECK(std::abs(t[1] - 1.5) < 1e-15);
  CHECK(std::abs(t[4] - 0.75) < 1e-15);
  CHECK(std::abs(t[7] - 0.375) < 1e-15);
  CHECK(std::abs(t[2]) == 0.0);

  const ComplexSeries poly = taylor_of_rational(RationalFunction::polynomial(Polynomial({1.0, 1.0})), 5);
  CHECK((poly - series({1.0, 1.0}, 5)).norm() == 0.0);
}

TEST_CASE("rational functions reject poles in the closed disk and cancel common roots") {
  CHECK_THROWS_AS(RationalFunction(Polynomial({1.0}), Polynomial({1.0, -1.0})), DomainError);
  CHECK_THROWS_AS(RationalFunction(Polynomial({1.0}), Polynomial({0.5, -1.0})), DomainError);
  // (z - 3)(z + 1) / ((z - 3)(z - 2)) = (z + 1) / (z - 2)
  const RationalFunction r(Polynomial::from_roots({3.0, -1.0}), Polynomial::from_roots({3.0, 2.0}));
  CHECK(r.denominator().degree() == 1);
  CHECK(std::abs(r.denominator().coeff(0) - 1.0) < 1e-14);
  CHECK(std::abs(r(0.3) - (1.3 / (0.3 - 2.0))) < 1e-14);
}

TEST_CASE("series division") {
  const int n = 16;
  const DivisionResult a = series_divide(series({1.0, 1.0}, n), ComplexSeries::one(n));
  CHECK((a.quotient - series({1.0, 1.0}, n)).norm() < 1e-15);

  CVector g(n);
  for (int k = 0; k < n; ++k) g(k) = std::pow(Complex(0.3, 0.4), k);
  CHECK((series_divide(ComplexSeries(g), ComplexSeries(g)).quotient - ComplexSeries::one(n)).norm() < 1e-13);

  const Polynomial den({2.0, 0.0, 0.0, -1.0});
  const ComplexSeries num = taylor_of_rational(RationalFunction(Polynomial({0.0, 0.0, 3.0}), den), 64);
  const ComplexSeries d = taylor_of_rational(RationalFunction(Polynomial({0.0, 3.0}), den), 64);
  const DivisionResult q = series_divide(num, d);
  CHECK(std::abs(q.quotient[1] - 1.0) < 1e-12);
  CHECK(std::abs(q.quotient[0]) < 1e-12);
  CHECK(q.quotient.resized(32).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rational reconstruction over a known denominator") {
  const Polynomial d1({2.0, -1.0});
  const auto a = rational_reconstruct(taylor_of_rational(RationalFunction(Polynomial({1.0}), d1), 64), d1);
  CHECK(a.residual < 1e-12);
  CHECK(std::abs(a.function(0.4) - 1.0 / 1.6) < 1e-12);

  const Polynomial d3({2.0, 0.0, 0.0, -1.0});
  const auto b = rational_reconstruct(taylor_of_rational(RationalFunction(Polynomial({1.0, 1.0}), d3), 64), d3);
  CHECK(b.function.numerator().degree() == 1);
  CHECK(std::abs(b.function(Complex(0.2, 0.3)) - (1.0 + Complex(0.2, 0.3)) / (2.0 - std::pow(Complex(0.2, 0.3), 3))) <
        1e-12);

  CVector e(32);
  double fact = 1.0;
  for (int k = 0; k < 32; ++k) {
    e(k) = 1.0 / fact;
    fact *= k + 1;
  }
  CHECK_THROWS_AS(rational_reconstruct(ComplexSeries(e), Polynomial({1.0, -1.0 / 1.5})), NumericalError);
  CHECK_FALSE(try_rational_reconstruct(ComplexSeries(e), Polynomial({1.0, -1.0 / 1.5})).has_value());
}

TEST_CASE("boundary values use the rational form when available") {
  // Pole at 1.02: the truncated series at N = 64 is far from its limit on the circle.
  const Polynomial den({1.0, -1.0 / 1.02});
  const RationalFunction r(Polynomial({1.0}), den);
  const ComplexSeries f = taylor_of_rational(r, 64);
  const CircleGrid grid(256);
  const CVector exact = r.sample(grid);
  CHECK((boundary_values(f, grid, den) - exact).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((boundary_values(f, grid, std::nullopt) - exact).cwiseAbs().maxCoeff() > 1e-3);
}
