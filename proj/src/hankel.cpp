#include "hankel_lab/hankel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hankel_lab/linalg.hpp"

namespace hankel_lab {

CMatrix hankel_matrix(const CVector& coeffs, int n, int offset) {
  CMatrix h = CMatrix::Zero(n, n);
  const Eigen::Index len = coeffs.size();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Eigen::Index idx = j + k + offset;
      if (idx < len) h(j, k) = coeffs(idx);
    }
  return h;
}

HankelOperator::HankelOperator(const ComplexSeries& symbol, int n, std::optional<RationalFunction> rational)
    : n_(n), rational_(std::move(rational)) {
  if (n < 1) throw DomainError("truncation order must be positive");
  symbol_ = symbol.resized(2 * n);
  const double scale = std::max(1.0, symbol_.coeffs().cwiseAbs().maxCoeff());
  if (rational_) {
    // Coefficients the matrices cannot see: index 2N onwards.
    const ComplexSeries longer = taylor_of_rational(*rational_, 4 * n);
    symbol_tail_ = longer.coeffs().tail(2 * n).cwiseAbs().maxCoeff();
  } else {
    symbol_tail_ = symbol.size() > 2 * n ? symbol.coeffs().tail(symbol.size() - 2 * n).cwiseAbs().maxCoeff() : 0.0;
    symbol_tail_ = std::max(symbol_tail_, symbol.tail_bound());
  }
  if (symbol_tail_ < 1e-12 * scale) {
    symbol_tail_ = 0.0;
  } else {
    warnings_.push_back("symbol coefficients beyond the truncation are not negligible (max " +
                        std::to_string(symbol_tail_) + ")");
  }
  gamma_ = hankel_matrix(symbol_.coeffs(), n, 0);
  gamma_tilde_ = hankel_matrix(symbol_.coeffs(), n, 1);
  factorize();
}

HankelOperator HankelOperator::from_rational(const RationalFunction& u, int n) {
  return HankelOperator(taylor_of_rational(u, 2 * n), n, u);
}

void HankelOperator::factorize() {
  Eigen::BDCSVD<CMatrix> svd_h(gamma_, Eigen::ComputeThinU);
  sv_h_ = svd_h.singularValues();
  u_h_ = svd_h.matrixU();
  Eigen::BDCSVD<CMatrix> svd_k(gamma_tilde_, Eigen::ComputeThinU);
  sv_k_ = svd_k.singularValues();
  u_k_ = svd_k.matrixU();
}

HankelOperator HankelOperator::corrupted_for_testing(double delta) const {
  HankelOperator copy = *this;
  const int j = std::min(1, n_ - 1);
  copy.gamma_tilde_(j, 0) += delta;
  copy.factorize();
  return copy;
}

int choose_truncation(const RationalFunction& u, int min_n, int cap, double tail) {
  if (cap < 16) throw DomainError("truncation cap must be at least 16");
  min_n = std::min(min_n, cap);
  const ComplexSeries c = taylor_of_rational(u, 4 * cap);
  const double thr = tail * std::max(1.0, c.coeffs().cwiseAbs().maxCoeff());
  int last = -1;
  for (int k = c.size() - 1; k >= 0; --k) {
    if (std::abs(c[k]) >= thr) {
      last = k;
      break;
    }
  }
  int n = ((last + 1 + 15) / 16) * 16;
  return std::clamp(n, min_n, cap);
}

namespace {

void check_size(const HankelOperator& op, Eigen::Index n) {
  if (n != op.order()) throw DomainError("vector length does not match the truncation order");
}

}  // namespace

CVector apply_H(const HankelOperator& op, const CVector& f) {
  check_size(op, f.size());
  return op.matrix() * f.conjugate();
}

CVector apply_K(const HankelOperator& op, const CVector& f) {
  check_size(op, f.size());
  return op.shifted_matrix() * f.conjugate();
}

ComplexSeries apply_H(const HankelOperator& op, const ComplexSeries& f) { return ComplexSeries(apply_H(op, f.coeffs())); }

ComplexSeries apply_K(const HankelOperator& op, const ComplexSeries& f) { return ComplexSeries(apply_K(op, f.coeffs())); }

ComplexSeries apply_linear_G(const HankelOperator& op, const ComplexSeries& f) {
  check_size(op, f.size());
  return ComplexSeries(op.matrix() * f.coeffs());
}

std::vector<SingularCluster> singular_clusters(const HankelOperator& op, const Tolerances& tol, Which which) {
  if (!(tol.rel_gap > 0.0 && tol.rel_gap < 1.0)) throw DomainError("rel_gap must lie in (0, 1)");
  const Eigen::VectorXd& sv = op.singular_values(which);
  std::vector<SingularCluster> out;
  if (sv.size() == 0 || sv(0) == 0.0) return out;
  const double floor = tol.noise_floor * op.norm();
  int count = 0;
  while (count < sv.size() && sv(count) > floor) ++count;

  int start = 0;
  for (int i = 0; i < count; ++i) {
    const bool last = (i + 1 == count);
    if (!last) {
      const double gap = (sv(i) - sv(i + 1)) / sv(i);
      if (gap >= tol.rel_gap / 10.0 && gap <= tol.rel_gap * 10.0)
        throw NumericalError("ambiguous singular value clustering near " + std::to_string(sv(i)) +
                             "; increase the truncation order");
      if (gap < tol.rel_gap) continue;
    }
    SingularCluster c;
    c.first_index = start;
    c.multiplicity = i - start + 1;
    c.s = sv.segment(start, c.multiplicity).mean();
    c.width = sv(start) - sv(i);
    out.push_back(c);
    start = i + 1;
  }
  return out;
}

std::optional<SchmidtSubspace> find_schmidt_subspace(const HankelOperator& op, double s, Which which,
                                                     const Tolerances& tol) {
  if (!(s > 0.0)) return std::nullopt;
  for (const SingularCluster& c : singular_clusters(op, tol, which)) {
    if (std::abs(c.s - s) > std::max(tol.rel_gap * s, c.width)) continue;
    SchmidtSubspace sub;
    sub.which = which;
    sub.s = c.s;
    sub.multiplicity = c.multiplicity;
    sub.cluster_width = c.width;
    sub.basis = op.left_singular_vectors(which).middleCols(c.first_index, c.multiplicity);

    const CMatrix& g = op.matrix(which);
    const CMatrix r = g * (g.adjoint() * sub.basis) - c.s * c.s * sub.basis;
    const double scale = std::max(op.norm() * op.norm(), 1e-300);
    if (r.colwise().norm().maxCoeff() > tol.subspace_tol * scale)
      throw NumericalError("Schmidt basis eigen-residual above tolerance");
    return sub;
  }
  return std::nullopt;
}

SchmidtSubspace schmidt_subspace(const HankelOperator& op, double s, Which which, const Tolerances& tol) {
  auto sub = find_schmidt_subspace(op, s, which, tol);
  if (!sub) throw DomainError("s = " + std::to_string(s) + " is not a singular value cluster of the " +
                              (which == Which::H ? std::string("Hankel") : std::string("shifted Hankel")) +
                              " matrix");
  return *sub;
}

CMatrix involution_fixed_basis(const SchmidtSubspace& sub, const HankelOperator& op, double tol) {
  if (sub.which != Which::H) throw DomainError("involution_fixed_basis needs an H_u Schmidt subspace");
  const int m = sub.multiplicity;
  const CMatrix& v = sub.basis;
  // Coordinates: H_u (V c) = V B conj(c) with B = V^* Gamma conj(V).
  const CMatrix b = v.adjoint() * op.matrix() * v.conjugate() / sub.s;
  Eigen::MatrixXd r(2 * m, 2 * m);
  r << b.real(), b.imag(), b.imag(), -b.real();
  // Fixed space of the real-linear involution = range of (I + R) / 2.
  const Eigen::MatrixXd proj = 0.5 * (Eigen::MatrixXd::Identity(2 * m, 2 * m) + r);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeFullU);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 0.5) ++rank;
  if (rank != m) throw NumericalError("fixed-point set of the involution has the wrong real dimension");

  CMatrix coords(m, m);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd x = svd.matrixU().col(i);
    coords.col(i) = x.head(m).cast<Complex>() + Complex(0.0, 1.0) * x.tail(m).cast<Complex>();
  }
  const CMatrix basis = v * coords;
  for (int i = 0; i < m; ++i) {
    const CVector f = basis.col(i);
    const CVector back = apply_H(op, apply_H(op, f)) / (sub.s * sub.s);
    if ((back - f).norm() > tol) throw NumericalError("involution residual above tolerance");
    if ((apply_H(op, f) / sub.s - f).norm() > tol) throw NumericalError("basis vector is not a fixed point");
  }
  return basis;
}

double rank_one_identity_residual(const HankelOperator& op) {
  const CMatrix& g = op.matrix();
  const CMatrix& gt = op.shifted_matrix();
  const CVector u = op.u().coeffs();
  const CMatrix diff = gt * gt.adjoint() - g * g.adjoint() + u * u.adjoint();
  return spectral_norm(diff);
}

}  // namespace hankel_lab
