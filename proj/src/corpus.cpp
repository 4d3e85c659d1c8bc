#include "hankel_lab/corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace hankel_lab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

const char* to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::TwoSV:
      return "two_sv";
    case SymbolKind::Inner:
      return "inner";
    case SymbolKind::Rational:
      return "rational";
    case SymbolKind::RealRational:
      return "real_rational";
  }
  return "unknown";
}

RationalFunction two_sv_symbol(double s, double s_tilde, const BlaschkeProduct& psi, const BlaschkeProduct& psi_tilde) {
  if (!(s_tilde > 0.0 && s > s_tilde)) throw DomainError("two_sv_symbol requires s > s_tilde > 0");
  const Polynomial n1 = psi.numerator();
  const Polynomial d1 = psi.denominator();
  const Polynomial n2 = psi_tilde.numerator();
  const Polynomial d2 = psi_tilde.denominator();
  const Polynomial num = n1 * d2 * (s * s - s_tilde * s_tilde);
  const Polynomial den = d1 * d2 * s - Polynomial({0.0, 1.0}) * n1 * n2 * s_tilde;
  // |z psi psi~| < 1 < s / s~ on the closed disk, so the poles lie outside.
  return RationalFunction(num, den, 1e-6);
}

std::vector<PredictedCluster> two_sv_prediction(double s, double s_tilde, const BlaschkeProduct& psi,
                                                const BlaschkeProduct& psi_tilde) {
  std::vector<PredictedCluster> out;
  out.push_back({s, psi.degree() + 1, psi.degree(), Dominance::H});
  out.push_back({s_tilde, psi_tilde.degree(), psi_tilde.degree() + 1, Dominance::K});
  return out;
}

RationalFunction inner_symbol(const BlaschkeProduct& theta) { return theta.as_rational(); }

std::vector<PredictedCluster> inner_prediction(const BlaschkeProduct& theta) {
  return {{1.0, theta.degree() + 1, theta.degree(), Dominance::H}};
}

RationalFunction random_rational_symbol(std::uint64_t seed, int degree, double pole_margin) {
  if (degree < 1) throw DomainError("random symbol degree must be positive");
  if (pole_margin < 0.1) throw DomainError("random symbols need a pole margin of at least 0.1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> poles;
  for (int i = 0; i < degree; ++i) poles.push_back(std::polar(1.0 + pole_margin + 2.0 * unit(rng), kTwoPi * unit(rng)));
  std::vector<Complex> num;
  for (int i = 0; i < degree; ++i) num.emplace_back(gauss(rng), gauss(rng));
  Polynomial den({1.0});
  for (const Complex p : poles) den = den * Polynomial({1.0, -1.0 / p});
  return RationalFunction(Polynomial(std::move(num)), den, pole_margin * 0.5);
}

RationalFunction random_real_rational_symbol(std::uint64_t seed, int degree, double pole_margin) {
  if (degree < 1) throw DomainError("random symbol degree must be positive");
  if (pole_margin < 0.1) throw DomainError("random symbols need a pole margin of at least 0.1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Polynomial den({1.0});
  int left = degree;
  if (left % 2 == 1) {
    const double r = (1.0 + pole_margin + 2.0 * unit(rng)) * (unit(rng) < 0.5 ? -1.0 : 1.0);
    den = den * Polynomial({1.0, -1.0 / r});
    --left;
  }
  for (; left > 0; left -= 2) {
    const Complex p = std::polar(1.0 + pole_margin + 2.0 * unit(rng), std::numbers::pi * unit(rng));
    // (1 - z/p)(1 - z/conj p) has real coefficients.
    const Complex inv = 1.0 / p;
    den = den * Polynomial({1.0, -2.0 * inv.real(), std::norm(inv)});
  }
  std::vector<Complex> num;
  for (int i = 0; i < degree; ++i) num.emplace_back(gauss(rng));
  std::vector<Complex> dc;
  for (const Complex c : den.coeffs()) dc.emplace_back(c.real());
  return RationalFunction(Polynomial(std::move(num)), Polynomial(std::move(dc)), pole_margin * 0.5);
}

BlaschkeProduct random_blaschke(std::uint64_t seed, int degree, double max_modulus) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> zeros;
  for (int i = 0; i < degree; ++i) zeros.push_back(std::polar(max_modulus * std::sqrt(unit(rng)), kTwoPi * unit(rng)));
  return BlaschkeProduct(kTwoPi * unit(rng), std::move(zeros));
}

int sweep_degree(std::uint64_t seed) { return 1 + static_cast<int>(seed % 4); }

RationalFunction build_symbol(const SymbolSpec& spec) {
  switch (spec.kind) {
    case SymbolKind::TwoSV:
      return two_sv_symbol(spec.s, spec.s_tilde, spec.psi, spec.psi_tilde);
    case SymbolKind::Inner:
      return inner_symbol(spec.theta);
    case SymbolKind::Rational:
      if (spec.seed) return random_rational_symbol(*spec.seed, spec.degree, spec.pole_margin);
      return RationalFunction(spec.numerator, spec.denominator, 1e-3);
    case SymbolKind::RealRational:
      if (!spec.seed) throw DomainError("real_rational symbols need a seed");
      return random_real_rational_symbol(*spec.seed, spec.degree, spec.pole_margin);
  }
  throw DomainError("unknown symbol kind");
}

std::vector<PredictedCluster> predicted_spectrum(const SymbolSpec& spec) {
  if (spec.kind == SymbolKind::TwoSV) return two_sv_prediction(spec.s, spec.s_tilde, spec.psi, spec.psi_tilde);
  if (spec.kind == SymbolKind::Inner) return inner_prediction(spec.theta);
  return {};
}

BlaschkeProduct oracle_psi(int degree) {
  switch (degree) {
    case 0:
      return BlaschkeProduct(0.4, {});
    case 1:
      return BlaschkeProduct(1.1, {Complex(0.3, 0.2)});
    case 2:
      return BlaschkeProduct(2.5, {Complex(-0.4, 0.1), Complex(0.1, 0.35)});
    case 3:
      return BlaschkeProduct(5.0, {Complex(0.5, 0.0), Complex(-0.2, 0.3), Complex(0.1, -0.45)});
    default:
      throw DomainError("oracle family covers degrees 0..3");
  }
}

BlaschkeProduct oracle_psi_tilde(int degree) {
  switch (degree) {
    case 0:
      return BlaschkeProduct(2.0, {});
    case 1:
      return BlaschkeProduct(0.7, {Complex(-0.25, -0.3)});
    case 2:
      return BlaschkeProduct(3.9, {Complex(0.45, -0.1), Complex(-0.3, -0.2)});
    case 3:
      return BlaschkeProduct(1.6, {Complex(0.0, 0.4), Complex(-0.5, 0.1), Complex(0.35, 0.3)});
    default:
      throw DomainError("oracle family covers degrees 0..3");
  }
}

}  // namespace hankel_lab
