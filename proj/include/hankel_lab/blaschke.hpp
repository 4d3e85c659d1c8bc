#pragma once

#include <vector>

#include "hankel_lab/series.hpp"

namespace hankel_lab {

/// Finite Blaschke product  e^{i phase} prod_j (z_j - z) / (1 - conj(z_j) z).
///
/// Every factor uses the (z_j - z) orientation of the disk automorphisms, so
/// the monomial z is {phase = pi, zeros = {0}}. Zeros at the origin are stored
/// explicitly; repeated zeros are allowed.
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;
  BlaschkeProduct(double phase, std::vector<Complex> zeros);

  /// z^k with the phase chosen so that the function is exactly z^k.
  static BlaschkeProduct monomial(int k);
  static BlaschkeProduct constant(double phase) { return BlaschkeProduct(phase, {}); }

  double phase() const { return phase_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  Complex eval(Complex z) const;
  Complex operator()(Complex z) const { return eval(z); }

  /// e^{i phase} prod (z_j - z)
  Polynomial numerator() const;
  /// D(z) = prod (1 - conj(z_j) z)
  Polynomial denominator() const;
  RationalFunction as_rational() const;
  ComplexSeries series(int n) const { return taylor_of_rational(as_rational(), n); }
  CVector sample(const CircleGrid& grid) const;

  BlaschkeProduct with_phase(double phase) const { return BlaschkeProduct(phase, zeros_); }
  /// Drops the zero closest to `target` (used to divide out a factor).
  BlaschkeProduct without_zero_near(Complex target) const;

 private:
  double phase_ = 0.0;
  std::vector<Complex> zeros_;
};

/// alpha(z) = e^{i extra_phase} (w - z) / (1 - conj(w) z), |w| < 1.
struct DiskAutomorphism {
  Complex w{};
  double extra_phase = 0.0;

  DiskAutomorphism() = default;
  explicit DiskAutomorphism(Complex w_, double extra = 0.0);
  Complex eval(Complex z) const;
};

/// Basis z^j / D(z) of Ran H_theta = K_{z theta} (j = 0..k) when extended,
/// of K_theta (j = 0..k-1) otherwise.
std::vector<RationalFunction> model_space_basis(const BlaschkeProduct& theta, bool extended);
/// Taylor coefficients of the model space basis, one column per element.
CMatrix model_space_matrix(const BlaschkeProduct& theta, bool extended, int n);

struct ModelSpaceImage {
  ComplexSeries value;
  double membership_residual = 0.0;
};

/// H_theta f = P(theta conj f) by circle sampling. f must lie in Ran H_theta
/// (relative residual of its projection at most `tol`).
ModelSpaceImage apply_H_theta(const BlaschkeProduct& theta, const ComplexSeries& f, double tol = 1e-8);

/// Closed form on Ran H_theta: P/D maps to e^{i phase} (-1)^k P^#/D, where
/// P^# has the conjugated coefficients of P in reversed order (degree k).
Polynomial apply_H_theta_numerator(const BlaschkeProduct& theta, const Polynomial& p);

/// alpha o theta as a Blaschke product of the same degree.
BlaschkeProduct frostman_compose(const BlaschkeProduct& theta, const DiskAutomorphism& a, double tol = 1e-8);

/// g_w o theta = sqrt(1 - |w|^2) / (1 - conj(w) theta).
RationalFunction crofoot_multiplier(const BlaschkeProduct& theta, Complex w);

/// Winding number of nonvanishing boundary samples (phase unwrapping).
double winding_number(const CVector& samples);

/// Recovers a finite Blaschke product from unimodular samples on a circle grid.
BlaschkeProduct fit_inner_from_samples(const CVector& samples, const CircleGrid& grid, double unimodularity_tol = 1e-8,
                                       double fit_tol = 1e-8);

/// Least-squares unimodular constant c with  values ~ c * reference.
Complex fit_unimodular_constant(const CVector& values, const CVector& reference);

/// Zero-set distance plus phase difference, for comparing inner functions.
struct InnerComparison {
  double zero_distance = 0.0;
  double phase_difference = 0.0;  // in (-pi, pi]
};
InnerComparison compare_inner(const BlaschkeProduct& a, const BlaschkeProduct& b);

}  // namespace hankel_lab
