#pragma once

#include <string>
#include <vector>

#include "hankel_lab/blaschke.hpp"
#include "hankel_lab/hankel.hpp"

namespace hankel_lab {

/// phi = H_u f / (s conj f) on the circle grid, for f in a Schmidt subspace.
struct UnimodularRatio {
  CVector samples;
  int grid_size = 0;
  double unimodularity = 0.0;          // max | |phi| - 1 |
  double independence_residual = 0.0;  // max |conj(f1) g2 - conj(f2) g1|, relative
  double winding = 0.0;
  int reference_column = 0;
  int filled_points = 0;  // grid points taken from another basis vector
  double aliasing = 0.0;  // Fourier mass of phi near the Nyquist band, relative
};

/// `grid_size` is the starting grid (default max(1024, 4N)); it doubles while
/// phi is under-resolved, up to 2^18 points. Throws NumericalError when phi is
/// not unimodular or depends on the basis vector.
UnimodularRatio unimodular_ratio(const HankelOperator& op, const SchmidtSubspace& sub, const Tolerances& tol = {},
                                 int grid_size = 0);

/// v = s P(phi), `length` coefficients.
ComplexSeries aak_symbol(double s, const UnimodularRatio& phi, int length);

struct AAKCertificate {
  double s = 0.0;
  int k = 0;
  UnimodularRatio phi;
  ComplexSeries v;                // remainder symbol, |Gamma_v| = s
  ComplexSeries low_rank_symbol;  // u - v
  Eigen::VectorXd approximant_singular_values;
  int rank_estimate = 0;
  double error_norm = 0.0;  // |Gamma - Gamma_{u-v}| = |Gamma_v|
  double independence_residual = 0.0;
};

/// Runs the ratio/projection pipeline at a singular value s of Gamma.
AAKCertificate aak_certificate(const HankelOperator& op, double s, const Tolerances& tol = {}, int grid_size = 0);

struct AAKReport {
  int n_s = 0;
  int rank = 0;
  int deg_phi = 0;
  double error_norm = 0.0;
  double error_deviation = 0.0;  // | |Gamma_v| - s | / s
  double kernel_residual = 0.0;  // |Gamma_{u-v} restricted to phi H^2| / |Gamma|
  bool chain_ok = false;
  bool error_ok = false;
  bool kernel_ok = false;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// n(s) <= rank Gamma_{u-v} <= deg phi with equality, |Gamma_v| = s, and
/// phi H^2 inside the kernel of H_{u-v}. `phi` is the inner factor of p.
AAKReport verify_aak_bounds(const HankelOperator& op, const AAKCertificate& cert, const BlaschkeProduct& phi,
                            const Tolerances& tol = {});

/// Best rank-k Hankel approximant. k must sit at a cluster boundary
/// (s_{k-1} > s_k); otherwise NumericalError.
AAKCertificate best_rank_k(const HankelOperator& op, int k, const Tolerances& tol = {}, int grid_size = 0);

/// At s = |H_u|: for basis vectors f of E_H(s) with a rational form, each
/// inner divisor a of f gives f / a in E_H(s) and H_u(f / a) = P(a H_u f).
/// Returns the worst residual (0 when no basis vector has an inner divisor).
double divisor_stability_residual(const HankelOperator& op, const Tolerances& tol = {});

}  // namespace hankel_lab
