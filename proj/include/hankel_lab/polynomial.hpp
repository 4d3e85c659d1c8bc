#pragma once

#include <initializer_list>
#include <vector>

#include "hankel_lab/types.hpp"

namespace hankel_lab {

/// Complex polynomial with ascending coefficients c_0 + c_1 z + ... .
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Complex> coeffs);
  explicit Polynomial(std::vector<Complex> coeffs);
  explicit Polynomial(const CVector& coeffs);

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, Complex c = 1.0);
  /// lead * prod (z - r).
  static Polynomial from_roots(const std::vector<Complex>& roots, Complex lead = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  double max_abs() const;

  Complex operator()(Complex z) const;
  Complex derivative_at(Complex z) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex c) const;

  /// Drops high-order coefficients below rel_tol * max|c|.
  Polynomial trimmed(double rel_tol) const;
  /// Quotient of synthetic division by (z - r); the remainder is discarded.
  Polynomial deflate(Complex r) const;
  /// z^n conj(P(1/conj z)) for n = degree(): conjugated, reversed coefficients.
  Polynomial reflected(int n) const;

  /// Roots via companion-matrix eigenvalues followed by Newton polishing.
  /// Low-order coefficients below zero_tol * max|c| are read as roots at 0.
  std::vector<Complex> roots(double zero_tol = 1e-13) const;

 private:
  void trim_exact();
  std::vector<Complex> coeffs_;
};

/// Optimal matching distance between two multisets of points (max over
/// matched pairs). Sizes must agree; otherwise returns +infinity.
double zero_set_distance(std::vector<Complex> a, std::vector<Complex> b);

}  // namespace hankel_lab
