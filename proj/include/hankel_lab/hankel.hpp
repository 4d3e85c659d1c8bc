#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hankel_lab/series.hpp"

namespace hankel_lab {

/// Truncated Hankel matrices Gamma = {g_{j+k}} and Gamma~ = {g_{j+k+1}}
/// (j, k < N) of a symbol u = sum g_n z^n, with their SVDs.
///
/// In coefficients, the anti-linear operators act as
///   H_u f = Gamma conj(f),   K_u f = Gamma~ conj(f),
/// so H_u^2 = Gamma Gamma^* and Schmidt subspaces are spans of left singular
/// vectors. Immutable after construction.
class HankelOperator {
 public:
  /// `symbol` must carry at least 2N coefficients; shorter series are zero-padded.
  HankelOperator(const ComplexSeries& symbol, int n, std::optional<RationalFunction> rational = std::nullopt);

  static HankelOperator from_rational(const RationalFunction& u, int n);

  int order() const { return n_; }
  /// Symbol coefficients g_0..g_{2N-1}.
  const ComplexSeries& symbol() const { return symbol_; }
  /// u = H_u 1 as an element of the truncated space (g_0..g_{N-1}).
  ComplexSeries u() const { return symbol_.resized(n_); }
  const std::optional<RationalFunction>& rational_symbol() const { return rational_; }

  const CMatrix& matrix() const { return gamma_; }
  const CMatrix& shifted_matrix() const { return gamma_tilde_; }
  const CMatrix& matrix(Which w) const { return w == Which::H ? gamma_ : gamma_tilde_; }

  /// Singular values (descending) and left singular vectors.
  const Eigen::VectorXd& singular_values(Which w = Which::H) const {
    return w == Which::H ? sv_h_ : sv_k_;
  }
  const CMatrix& left_singular_vectors(Which w = Which::H) const { return w == Which::H ? u_h_ : u_k_; }
  double norm() const { return sv_h_.size() ? sv_h_(0) : 0.0; }
  /// Largest |g_n| for n >= 2N-1 that was not representable (0 when the tail is below 1e-12).
  double symbol_tail() const { return symbol_tail_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Test hook: a copy with one entry of Gamma~ perturbed (no longer Hankel).
  HankelOperator corrupted_for_testing(double delta) const;

 private:
  HankelOperator() = default;
  void factorize();

  int n_ = 0;
  ComplexSeries symbol_;
  std::optional<RationalFunction> rational_;
  CMatrix gamma_, gamma_tilde_;
  Eigen::VectorXd sv_h_, sv_k_;
  CMatrix u_h_, u_k_;
  double symbol_tail_ = 0.0;
  std::vector<std::string> warnings_;
};

/// Smallest N in [min_n, cap], a multiple of 16, with |g_n| < tail * max(1, max|g|) for n >= N.
int choose_truncation(const RationalFunction& u, int min_n = 128, int cap = 512, double tail = 1e-12);

ComplexSeries apply_H(const HankelOperator& op, const ComplexSeries& f);
ComplexSeries apply_K(const HankelOperator& op, const ComplexSeries& f);
/// Linear realization G_u f = Gamma f (= H_u applied to the coefficient conjugate of f).
ComplexSeries apply_linear_G(const HankelOperator& op, const ComplexSeries& f);

CVector apply_H(const HankelOperator& op, const CVector& f);
CVector apply_K(const HankelOperator& op, const CVector& f);

struct SingularCluster {
  double s = 0.0;          // mean of the grouped singular values
  int multiplicity = 0;
  double width = 0.0;      // max - min within the cluster
  int first_index = 0;     // position in the descending singular value list
};

/// Groups the singular values of Gamma (or Gamma~) above the noise floor.
/// Throws NumericalError when a gap is comparable to rel_gap (within a factor 10).
std::vector<SingularCluster> singular_clusters(const HankelOperator& op, const Tolerances& tol = {},
                                               Which which = Which::H);

struct SchmidtSubspace {
  Which which = Which::H;
  double s = 0.0;
  CMatrix basis;  // N x multiplicity, orthonormal columns
  int multiplicity = 0;
  double cluster_width = 0.0;

  CVector project(const CVector& x) const { return basis * (basis.adjoint() * x); }
};

/// Ker(H_u^2 - s^2) (or the K_u analogue) at truncation scale; nullopt when s
/// is not a cluster of the chosen matrix.
std::optional<SchmidtSubspace> find_schmidt_subspace(const HankelOperator& op, double s, Which which,
                                                     const Tolerances& tol = {});
/// As above but throws DomainError when s is not a cluster.
SchmidtSubspace schmidt_subspace(const HankelOperator& op, double s, Which which, const Tolerances& tol = {});

/// Real-orthonormal basis of the fixed points of f -> s^{-1} H_u f on the subspace
/// (a Takagi-type frame). The columns are also complex-orthonormal.
CMatrix involution_fixed_basis(const SchmidtSubspace& sub, const HankelOperator& op, double tol = 1e-8);

/// || Gamma~ Gamma~^* - Gamma Gamma^* + g g^* ||, g = (g_0..g_{N-1}).
double rank_one_identity_residual(const HankelOperator& op);

/// Dense Hankel matrix {c_{j+k+offset}} of size n x n from coefficients.
CMatrix hankel_matrix(const CVector& coeffs, int n, int offset = 0);

}  // namespace hankel_lab
