#include "hankel_lab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace hankel_lab {

CMatrix orthonormal_basis(const CMatrix& a, double rel_tol) {
  if (a.cols() == 0 || a.rows() == 0) return CMatrix(a.rows(), 0);
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return CMatrix(a.rows(), 0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

double max_principal_angle(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols()) return std::numbers::pi / 2;
  if (a.cols() == 0) return 0.0;
  const CMatrix rb = b - a * (a.adjoint() * b);
  const CMatrix ra = a - b * (b.adjoint() * a);
  const double s = std::max(spectral_norm(rb), spectral_norm(ra));
  return std::asin(std::min(1.0, s));
}

CMatrix intersect_orthogonal(const CMatrix& v, const CVector& x) {
  if (v.cols() == 0) return v;
  // <V c, x> = row^* c, so the admissible coordinates are row^perp.
  const CVector row = v.adjoint() * x;
  if (row.norm() == 0.0) return v;
  CMatrix r(row.size(), 1);
  r.col(0) = row;
  return v * orthogonal_complement(r);
}

CMatrix orthogonal_complement(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() == 0) return CMatrix::Identity(n, n);
  const CMatrix q = orthonormal_basis(a);
  Eigen::HouseholderQR<CMatrix> qr(q);
  const CMatrix full = qr.householderQ() * CMatrix::Identity(n, n);
  return full.rightCols(n - q.cols());
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

int numerical_rank(const CMatrix& m, double tol, double reference) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double ref = reference > 0.0 ? reference : s(0);
  if (ref == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * ref) ++r;
  return r;
}

}  // namespace hankel_lab
