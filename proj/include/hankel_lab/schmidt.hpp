#pragma once

#include <optional>
#include <vector>

#include "hankel_lab/blaschke.hpp"
#include "hankel_lab/hankel.hpp"

namespace hankel_lab {

struct DominanceResult {
  Dominance dominance = Dominance::H;
  double s = 0.0;
  double proj_h = 0.0;  // |P_{E_H(s)} u| / |u|
  double proj_k = 0.0;  // |P_{E_K(s)} u| / |u|
  std::optional<SchmidtSubspace> e_h;
  std::optional<SchmidtSubspace> e_k;
  // H case: projections of 1 and u onto E_H(s).
  ComplexSeries ones_s, u_s;
  // K case: projection of u onto E_K(s) and its image under K_u.
  ComplexSeries u_tilde, k_u_tilde;
};

/// Decides which of E_H(s), E_K(s) the symbol is not orthogonal to. Exactly
/// one projection must exceed dominance_tol; anything else is an error.
DominanceResult classify_dominance(const HankelOperator& op, double s, const Tolerances& tol = {});

/// Inner psi of the given degree with y = s psi x, obtained from the null
/// vector of  A x = B (y / s)  over polynomial pairs of that degree.
struct InnerQuotient {
  BlaschkeProduct psi;
  double relation_residual = 0.0;  // |y - s psi x| / |y|
  double null_singular_value = 0.0;
};
InnerQuotient inner_quotient(const ComplexSeries& y, const ComplexSeries& x, double s, int degree,
                             const Tolerances& tol = {});

struct SchmidtDecomposition {
  double s = 0.0;
  Dominance dominance = Dominance::H;
  int multiplicity = 0;
  ComplexSeries p_series;
  std::optional<RationalFunction> p_rational;
  BlaschkeProduct theta;
  BlaschkeProduct psi;           // psi_s (H case) or psi~_s (K case)
  BlaschkeProduct inner_factor;  // phi, the inner part of p
  bool inner_factor_from_winding = false;
  double outer_residual = 0.0;
  double psi_relation_residual = 0.0;
  double subspace_angle = 0.0;         // E_H(s) vs p Ran H_theta
  double isometry_residual = 0.0;      // Gram difference on Ran H_theta
  double intertwining_residual = 0.0;  // H_u T_p = s T_p H_theta
  double companion_angle = 0.0;        // E_K(s) against its model-space description
  double companion_residual = 0.0;     // action of the other operator on its model space
};

SchmidtDecomposition extract_H_dominant(const HankelOperator& op, double s, const ComplexSeries& ones_s,
                                        const ComplexSeries& u_s, const Tolerances& tol = {});
/// Requires dim E_H(s) >= 1 (equivalently deg psi~ >= 1).
SchmidtDecomposition extract_K_dominant(const HankelOperator& op, double s, const ComplexSeries& u_tilde,
                                        const Tolerances& tol = {});
/// classify_dominance followed by the matching extraction.
SchmidtDecomposition decompose(const HankelOperator& op, double s, const Tolerances& tol = {});

/// psi_s or psi~_s for any cluster of Gamma or Gamma~, including clusters
/// with E_H(s) = {0}.
struct InnerParameter {
  Dominance dominance = Dominance::H;
  BlaschkeProduct psi;
  double relation_residual = 0.0;
  double projection_norm = 0.0;  // |u_s| or |u~_s|
};
InnerParameter extract_inner_parameter(const HankelOperator& op, double s, const Tolerances& tol = {});

struct InnerOuter {
  BlaschkeProduct inner;
  RationalFunction outer;
  double modulus_residual = 0.0;  // max | |outer| - |p| | on the circle
};
/// Splits off the Blaschke factor carried by the numerator roots inside the disk.
InnerOuter inner_outer_factor(const RationalFunction& p, const Tolerances& tol = {});

struct DegreeReport {
  int n_s = 0;             // multiplicity of the spectrum above s
  int deg_phi = 0;
  double restricted_norm = 0.0;  // |H_u restricted to phi H^2|
  bool degree_ok = false;
  bool norm_ok = false;
};
DegreeReport verify_degree_count(const HankelOperator& op, const SchmidtDecomposition& d, const Tolerances& tol = {});
/// Total multiplicity of singular values of Gamma above s (1 + rel_gap).
int count_above(const HankelOperator& op, double s, const Tolerances& tol = {});
/// Orthonormal basis of C^N intersected with phi H^2 (complement of the truncated K_phi).
CMatrix truncated_multiples_basis(const BlaschkeProduct& phi, int n);

struct SelfAdjointSplit {
  double s = 0.0;
  int dim_plus = 0;
  int dim_minus = 0;
  double angle_plus = 0.0;   // Ker(H_u - s) vs p {f : H_theta f = f}
  double angle_minus = 0.0;  // Ker(H_u + s) vs p {f : H_theta f = -f}
};
/// Real symbols only: eigenvalue signs within the |lambda| = s cluster of Gamma.
SelfAdjointSplit selfadjoint_eigen_split(const HankelOperator& op, double s, const Tolerances& tol = {});

/// b.p = c_p a.p and b.theta = c_theta a.theta, up to the reported residuals.
struct UniquenessReport {
  Complex c_p{1.0};
  Complex c_theta{1.0};
  double p_residual = 0.0;
  double zero_distance = 0.0;
  bool aligned = false;
};
UniquenessReport verify_uniqueness(const SchmidtDecomposition& a, const SchmidtDecomposition& b, double tol = 1e-6);

// Structural identities checked cluster by cluster.

/// Largest principal angle in the subspace equality of the dominance
/// dichotomy (E_K = E_H intersected with u^perp, or the K counterpart).
double dichotomy_angle(const HankelOperator& op, const DominanceResult& d);

/// Shift relations: H case  S(E_H ∩ u^perp) = E_H ∩ 1^perp;
/// K case  S(E_K ∩ (K_u u)^perp) = E_K ∩ u^perp.
double shift_relation_angle(const HankelOperator& op, const DominanceResult& d);

/// Max over coefficients of |H_u(f g) - P(conj(f) H_u g)| for polynomial f and
/// g of degree < N/2, relative to |f|_1 |g| |Gamma|.
double commutation_residual(const HankelOperator& op, const Polynomial& f, const ComplexSeries& g);

/// Gram-matrix difference between {p e_j} and {e_j} over a model space basis,
/// by quadrature on the grid. `extended` selects Ran H_theta instead of K_theta.
double multiplier_isometry_residual(const BlaschkeProduct& theta, const CVector& p_samples, const CircleGrid& grid,
                                    bool extended);

/// p = a / (1 - theta b) on the grid, for the forward check of the isometric
/// multiplier parametrization (|a|^2 + |b|^2 = 1 on the circle).
CVector ratio_multiplier_samples(const BlaschkeProduct& theta, const CVector& a, const CVector& b);

}  // namespace hankel_lab
