#include "hankel_lab/aak.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "hankel_lab/linalg.hpp"
#include "hankel_lab/schmidt.hpp"

namespace hankel_lab {

namespace {

std::optional<Polynomial> symbol_denominator(const HankelOperator& op) {
  if (op.rational_symbol()) return op.rational_symbol()->denominator();
  return std::nullopt;
}

constexpr double kAliasFloor = 1e-14;
constexpr int kMaxGrid = 1 << 18;

UnimodularRatio ratio_on_grid(const HankelOperator& op, const SchmidtSubspace& sub, const Tolerances& tol,
                              const CircleGrid& grid) {
  const std::optional<Polynomial> den = symbol_denominator(op);
  const int m = sub.multiplicity;
  const int pts = grid.size();

  CMatrix f(pts, m), g(pts, m);
  for (int j = 0; j < m; ++j) {
    const ComplexSeries fj(CVector(sub.basis.col(j)));
    const ComplexSeries gj = apply_H(op, fj) * (1.0 / sub.s);
    f.col(j) = boundary_values(fj, grid, den, tol.reconstruction_tol);
    g.col(j) = boundary_values(gj, grid, den, tol.reconstruction_tol);
  }

  UnimodularRatio out;
  out.grid_size = pts;
  double best = -1.0;
  for (int j = 0; j < m; ++j) {
    const double lo = f.col(j).cwiseAbs().minCoeff();
    if (lo > best) {
      best = lo;
      out.reference_column = j;
    }
  }
  const double fmax = f.cwiseAbs().maxCoeff();
  const double gmax = g.cwiseAbs().maxCoeff();
  out.samples.resize(pts);
  for (int k = 0; k < pts; ++k) {
    int col = out.reference_column;
    if (std::abs(f(k, col)) < 1e-8 * fmax) {
      Eigen::Index alt;
      f.row(k).cwiseAbs().maxCoeff(&alt);
      col = static_cast<int>(alt);
      if (std::abs(f(k, col)) < 1e-8 * fmax)
        throw NumericalError("unimodular_ratio: every basis vector vanishes at a grid point");
      ++out.filled_points;
    }
    out.samples(k) = g(k, col) / std::conj(f(k, col));
  }
  out.unimodularity = (out.samples.cwiseAbs().array() - 1.0).abs().maxCoeff();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const CVector r = f.col(a).conjugate().cwiseProduct(g.col(b)) - f.col(b).conjugate().cwiseProduct(g.col(a));
      out.independence_residual = std::max(out.independence_residual, r.cwiseAbs().maxCoeff() / (fmax * gmax));
    }
  out.winding = winding_number(out.samples);
  return out;
}

}  // namespace

UnimodularRatio unimodular_ratio(const HankelOperator& op, const SchmidtSubspace& sub, const Tolerances& tol,
                                 int grid_size) {
  if (sub.which != Which::H || sub.multiplicity == 0) throw DomainError("unimodular_ratio needs a nonempty E_H(s)");
  const int n = op.order();
  int pts = std::max(grid_size > 0 ? grid_size : 0, CircleGrid::for_order(n).size());
  for (;;) {
    UnimodularRatio out = ratio_on_grid(op, sub, tol, CircleGrid(pts));
    // phi has poles wherever f has zeros close to the circle; refine until its
    // Fourier coefficients around the Nyquist band are at roundoff level.
    const CVector c = CircleGrid(pts).fourier(out.samples);
    const double band = c.segment(3 * pts / 8, pts / 4).cwiseAbs().maxCoeff();
    if (band <= kAliasFloor * c.cwiseAbs().maxCoeff() || pts >= kMaxGrid) {
      out.aliasing = band / c.cwiseAbs().maxCoeff();
      if (out.unimodularity > tol.unimodularity_tol) throw NumericalError("unimodular_ratio: ratio is not unimodular");
      if (out.independence_residual > tol.residual_tol)
        throw NumericalError("unimodular_ratio: ratio depends on the chosen basis vector");
      return out;
    }
    pts *= 2;
  }
}

ComplexSeries aak_symbol(double s, const UnimodularRatio& phi, int length) {
  const CircleGrid grid(phi.grid_size);
  return grid.szego_project(phi.samples, length) * s;
}

AAKCertificate aak_certificate(const HankelOperator& op, double s, const Tolerances& tol, int grid_size) {
  const int n = op.order();
  const SchmidtSubspace sub = schmidt_subspace(op, s, Which::H, tol);
  AAKCertificate c;
  c.s = sub.s;
  c.k = count_above(op, sub.s, tol);
  c.phi = unimodular_ratio(op, sub, tol, grid_size);
  c.independence_residual = c.phi.independence_residual;
  c.v = aak_symbol(sub.s, c.phi, 2 * n);
  c.low_rank_symbol = op.symbol() - c.v;
  const CMatrix gv = hankel_matrix(c.v.coeffs(), n);
  const CMatrix gr = hankel_matrix(c.low_rank_symbol.coeffs(), n);
  c.error_norm = spectral_norm(gv);
  Eigen::BDCSVD<CMatrix> svd(gr);
  c.approximant_singular_values = svd.singularValues();
  for (Eigen::Index i = 0; i < c.approximant_singular_values.size(); ++i)
    if (c.approximant_singular_values(i) > tol.rank_tol * op.norm()) ++c.rank_estimate;
  return c;
}

AAKReport verify_aak_bounds(const HankelOperator& op, const AAKCertificate& cert, const BlaschkeProduct& phi,
                            const Tolerances& tol) {
  const int n = op.order();
  AAKReport r;
  r.n_s = count_above(op, cert.s, tol);
  r.rank = cert.rank_estimate;
  r.deg_phi = phi.degree();
  r.chain_ok = r.n_s <= r.rank && r.rank <= r.deg_phi && r.n_s == r.deg_phi;
  if (!r.chain_ok) r.violations.push_back("n(s) = rank H_{u-v} = deg phi");

  const CMatrix gr = hankel_matrix(cert.low_rank_symbol.coeffs(), n);
  r.error_norm = spectral_norm(op.matrix() - gr);
  r.error_deviation = cert.s > 0.0 ? std::abs(r.error_norm - cert.s) / cert.s : r.error_norm;
  r.error_ok = r.error_deviation <= tol.norm_tol;
  if (!r.error_ok) r.violations.push_back("|H_u - H_{u-v}| = s");

  const CMatrix q = truncated_multiples_basis(phi, n);
  r.kernel_residual = spectral_norm(gr * q.conjugate()) / std::max(op.norm(), 1e-300);
  r.kernel_ok = r.kernel_residual <= tol.residual_tol;
  if (!r.kernel_ok) r.violations.push_back("phi H^2 in Ker H_{u-v}");
  return r;
}

AAKCertificate best_rank_k(const HankelOperator& op, int k, const Tolerances& tol, int grid_size) {
  if (k < 0) throw DomainError("best_rank_k: k must be nonnegative");
  const auto clusters = singular_clusters(op, tol, Which::H);
  int before = 0;
  for (const SingularCluster& c : clusters) {
    if (before == k) {
      AAKCertificate cert = aak_certificate(op, c.s, tol, grid_size);
      cert.k = k;
      return cert;
    }
    before += c.multiplicity;
    if (before > k)
      throw NumericalError("best_rank_k: k = " + std::to_string(k) +
                           " splits a singular value cluster, the strict gap hypothesis fails");
  }
  // k reaches the numerical rank: the operator itself is the approximant.
  const int n = op.order();
  AAKCertificate cert;
  cert.k = k;
  cert.v = ComplexSeries::zero(2 * n);
  cert.low_rank_symbol = op.symbol();
  cert.approximant_singular_values = op.singular_values();
  for (Eigen::Index i = 0; i < cert.approximant_singular_values.size(); ++i)
    if (cert.approximant_singular_values(i) > tol.rank_tol * op.norm()) ++cert.rank_estimate;
  return cert;
}

double divisor_stability_residual(const HankelOperator& op, const Tolerances& tol) {
  const auto clusters = singular_clusters(op, tol, Which::H);
  if (clusters.empty() || !op.rational_symbol()) return 0.0;
  const int n = op.order();
  const SchmidtSubspace sub = schmidt_subspace(op, clusters.front().s, Which::H, tol);
  const Polynomial den = op.rational_symbol()->denominator();
  const CMatrix& v = sub.basis;
  double worst = 0.0;
  for (int j = 0; j < sub.multiplicity; ++j) {
    const ComplexSeries f(CVector(v.col(j)));
    const auto rec = try_rational_reconstruct(f, den, tol.reconstruction_tol);
    if (!rec) continue;
    const Polynomial& q = rec->function.numerator();
    const ComplexSeries hf = apply_H(op, f);
    for (const Complex r : q.roots()) {
      if (std::abs(r) >= 1.0 - tol.boundary_band) continue;
      // f / a with a = (r - z) / (1 - conj(r) z).
      const Polynomial num = q.deflate(r) * Polynomial({-1.0, std::conj(r)});
      const ComplexSeries g = taylor_of_rational(RationalFunction(num, rec->function.denominator(), 0.0), n);
      const double gn = g.norm();
      const double outside = (g.coeffs() - v * (v.adjoint() * g.coeffs())).norm() / gn;
      const ComplexSeries a = BlaschkeProduct(0.0, {r}).series(n);
      const double action = (apply_H(op, g) - multiply(a, hf)).norm() / (gn * sub.s);
      worst = std::max({worst, outside, action});
    }
  }
  return worst;
}

}  // namespace hankel_lab
