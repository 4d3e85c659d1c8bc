#pragma once

#include <optional>
#include <vector>

#include "hankel_lab/polynomial.hpp"
#include "hankel_lab/types.hpp"

namespace hankel_lab {

/// Truncated Taylor coefficient vector c_0..c_{N-1} of an element of H^2,
/// together with an estimate of the discarded l^2 mass.
class ComplexSeries {
 public:
  ComplexSeries() = default;
  explicit ComplexSeries(CVector coeffs, double tail_bound = 0.0);

  static ComplexSeries zero(int n) { return ComplexSeries(CVector::Zero(n)); }
  static ComplexSeries one(int n) { return monomial(0, n); }
  static ComplexSeries monomial(int k, int n, Complex c = 1.0);
  static ComplexSeries from_polynomial(const Polynomial& p, int n);

  int size() const { return static_cast<int>(coeffs_.size()); }
  const CVector& coeffs() const { return coeffs_; }
  Complex operator[](int k) const { return coeffs_(k); }
  double tail_bound() const { return tail_bound_; }
  double norm() const { return coeffs_.norm(); }

  Complex evaluate(Complex z) const;
  /// Truncates (moving the dropped mass into the tail) or zero-pads.
  ComplexSeries resized(int n) const;
  /// Coefficient-wise conjugate (the conjugation C on l^2).
  ComplexSeries conj_coeffs() const;
  ComplexSeries normalized() const;

  ComplexSeries operator+(const ComplexSeries& o) const;
  ComplexSeries operator-(const ComplexSeries& o) const;
  ComplexSeries operator*(Complex c) const;

 private:
  CVector coeffs_;
  double tail_bound_ = 0.0;
};

/// <f, g> = sum f_k conj(g_k) over the common truncation.
Complex inner_product(const ComplexSeries& f, const ComplexSeries& g);

/// Cauchy product truncated to N terms.
ComplexSeries multiply(const ComplexSeries& a, const ComplexSeries& b);
ComplexSeries shift(const ComplexSeries& f);
ComplexSeries backshift(const ComplexSeries& f);

struct DivisionResult {
  ComplexSeries quotient;
  double residual = 0.0;  // |q*den - num| / |num|
};

/// Formal power-series quotient. A common block of leading zeros is
/// cancelled by index shifting; mismatched vanishing orders are rejected.
DivisionResult series_divide(const ComplexSeries& num, const ComplexSeries& den, double division_floor = 1e-10);

/// Uniform grid of M-th roots of unity used for every boundary computation.
class CircleGrid {
 public:
  explicit CircleGrid(int m);
  /// max(1024, 4N), the default grid for truncation order N.
  static CircleGrid for_order(int n);

  int size() const { return m_; }
  double angle(int k) const;
  Complex point(int k) const;

  /// Boundary values of the truncated series (coefficients beyond M are aliased).
  CVector sample(const ComplexSeries& f) const;
  /// Szego projection: DFT of the samples with negative frequencies discarded,
  /// frequencies 0..n-1 returned. Requires M a power of two and M >= 2n.
  ComplexSeries szego_project(const CVector& samples, int n) const;
  /// All Fourier coefficients of the samples, index k = frequency k mod M.
  CVector fourier(const CVector& samples) const;
  /// Grid quadrature of f conj(g).
  Complex inner(const CVector& f, const CVector& g) const;

 private:
  int m_;
};

/// Ratio of complex polynomials, analytic on a neighbourhood of the closed disk.
/// Stored canonically: denominator(0) = 1, common roots cancelled.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_({1.0}) {}
  /// Throws DomainError if a pole lies within `margin` of the closed disk.
  RationalFunction(Polynomial numerator, Polynomial denominator, double margin = 1e-3);

  static RationalFunction polynomial(Polynomial p) { return RationalFunction(std::move(p), Polynomial({1.0})); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  const std::vector<Complex>& poles() const { return poles_; }
  /// Smallest pole modulus, +inf for polynomials.
  double min_pole_modulus() const;
  bool is_zero() const { return num_.is_zero(); }

  Complex operator()(Complex z) const { return num_(z) / den_(z); }
  CVector sample(const CircleGrid& grid) const;

 private:
  Polynomial num_;
  Polynomial den_;
  std::vector<Complex> poles_;
};

/// First n Taylor coefficients by the denominator recurrence, with a tail estimate.
ComplexSeries taylor_of_rational(const RationalFunction& r, int n);

struct ReconstructionResult {
  RationalFunction function;
  double residual = 0.0;  // relative coefficient residual
};

/// Least-squares numerator of degree <= deg(den) - 1 + slack with num/den
/// matching f. Throws NumericalError when the residual exceeds tol.
ReconstructionResult rational_reconstruct(const ComplexSeries& f, const Polynomial& den, double tol = 1e-8,
                                          int slack = 2);

/// Degree-(d) numerator fit without throwing; nullopt when the residual exceeds tol.
std::optional<ReconstructionResult> try_rational_reconstruct(const ComplexSeries& f, const Polynomial& den,
                                                             double tol = 1e-8, int slack = 2);

/// Boundary samples of f. When f reconstructs as a rational function over `den`
/// the rational form is evaluated, which removes the truncation error of the
/// plain series sum.
CVector boundary_values(const ComplexSeries& f, const CircleGrid& grid, const std::optional<Polynomial>& den,
                        double tol = 1e-8);

}  // namespace hankel_lab
