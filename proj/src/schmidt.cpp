#include "hankel_lab/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hankel_lab/linalg.hpp"

namespace hankel_lab {

namespace {

ComplexSeries rational_series(const Polynomial& num, const Polynomial& den, int n) {
  return taylor_of_rational(RationalFunction(num, den, 0.0), n);
}

/// Norm of num/den including the part beyond the truncation.
double rational_norm(const Polynomial& num, const Polynomial& den, int n) {
  const ComplexSeries s = rational_series(num, den, 4 * n);
  return std::hypot(s.norm(), s.tail_bound());
}

CMatrix as_columns(const std::vector<ComplexSeries>& cols, int n) {
  CMatrix m(n, static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j].coeffs();
  return m;
}

/// Unimodular c minimizing |target - c * model|.
Complex phase_fit(const ComplexSeries& target, const ComplexSeries& model) {
  const Complex c = inner_product(target, model);
  if (std::abs(c) == 0.0) return 1.0;
  return c / std::abs(c);
}

/// Resets the phase of theta so that H_u p = s theta p.
BlaschkeProduct align_theta(const HankelOperator& op, double s, const ComplexSeries& p, const BlaschkeProduct& theta) {
  const int n = op.order();
  const ComplexSeries hp = apply_H(op, p);
  const ComplexSeries model = multiply(p, theta.with_phase(0.0).series(n)) * s;
  return theta.with_phase(std::arg(phase_fit(hp, model)));
}

/// H_theta (z^j / D) = kappa z^{k-j} / D, kappa = e^{i phase} (-1)^k.
Complex h_theta_constant(const BlaschkeProduct& theta) {
  return std::polar(theta.degree() % 2 == 0 ? 1.0 : -1.0, theta.phase());
}

struct ModelChecks {
  double angle = 0.0;
  double isometry = 0.0;
  double intertwining = 0.0;
};

/// E_H(s) against p Ran H_theta: principal angle, Gram isometry and the
/// intertwining H_u T_p = s T_p H_theta on the normalized basis z^j / D.
ModelChecks check_model_space(const HankelOperator& op, double s, const ComplexSeries& p, const BlaschkeProduct& theta,
                              const CMatrix& e_h) {
  const int n = op.order();
  const int k = theta.degree();
  const Polynomial d = theta.denominator();
  const Complex kappa = h_theta_constant(theta);
  std::vector<ComplexSeries> pf;
  CMatrix gram_f(k + 1, k + 1);
  std::vector<ComplexSeries> f_long;
  ModelChecks out;
  for (int j = 0; j <= k; ++j) {
    const Polynomial num = Polynomial::monomial(j);
    const double nrm = rational_norm(num, d, n);
    f_long.push_back(rational_series(num, d, 4 * n) * (1.0 / nrm));
    const ComplexSeries f = f_long.back().resized(n);
    const ComplexSeries prod = multiply(p, f);
    pf.push_back(prod);
    const ComplexSeries hf = rational_series(Polynomial::monomial(k - j, kappa), d, n) * (1.0 / nrm);
    const ComplexSeries lhs = apply_H(op, prod);
    const ComplexSeries rhs = multiply(p, hf) * s;
    out.intertwining = std::max(out.intertwining, (lhs - rhs).norm());
  }
  for (int a = 0; a <= k; ++a)
    for (int b = 0; b <= k; ++b) gram_f(a, b) = inner_product(f_long[a], f_long[b]);
  const CMatrix w = as_columns(pf, n);
  const CMatrix gram_pf = w.adjoint() * w;
  out.isometry = spectral_norm(gram_pf - gram_f.transpose());
  out.angle = max_principal_angle(orthonormal_basis(w), e_h);
  return out;
}

}  // namespace

DominanceResult classify_dominance(const HankelOperator& op, double s, const Tolerances& tol) {
  DominanceResult r;
  r.s = s;
  r.e_h = find_schmidt_subspace(op, s, Which::H, tol);
  r.e_k = find_schmidt_subspace(op, s, Which::K, tol);
  if (!r.e_h && !r.e_k) throw DomainError("s is not a singular value cluster of either Hankel matrix");
  const CVector u = op.u().coeffs();
  const double un = u.norm();
  if (un == 0.0) throw DomainError("zero symbol has no Schmidt subspaces");
  if (r.e_h) r.proj_h = (r.e_h->basis.adjoint() * u).norm() / un;
  if (r.e_k) r.proj_k = (r.e_k->basis.adjoint() * u).norm() / un;
  const bool h = r.proj_h > tol.dominance_tol;
  const bool k = r.proj_k > tol.dominance_tol;
  if (h && k) throw NumericalError("u is not orthogonal to either Schmidt subspace; dominance is undecidable");
  if (!h && !k) throw NumericalError("u is orthogonal to both Schmidt subspaces; the cluster looks spurious");
  if (h) {
    r.dominance = Dominance::H;
    const CMatrix& v = r.e_h->basis;
    const CVector ones = v * v.row(0).adjoint();
    r.ones_s = ComplexSeries(ones);
    r.u_s = ComplexSeries(v * (v.adjoint() * u));
  } else {
    r.dominance = Dominance::K;
    const CMatrix& v = r.e_k->basis;
    r.u_tilde = ComplexSeries(v * (v.adjoint() * u));
    r.k_u_tilde = apply_K(op, r.u_tilde);
  }
  return r;
}

InnerQuotient inner_quotient(const ComplexSeries& y, const ComplexSeries& x, double s, int degree,
                             const Tolerances& tol) {
  const int n = x.size();
  if (y.size() != n) throw DomainError("inner_quotient: size mismatch");
  if (degree < 0 || 2 * (degree + 1) > n) throw DomainError("inner_quotient: degree out of range");
  const double xn = x.norm();
  const double yn = y.norm();
  if (xn == 0.0 || yn == 0.0) throw DomainError("inner_quotient: zero input");
  const CVector xv = x.coeffs() / xn;
  const CVector yv = y.coeffs() / yn;

  InnerQuotient out;
  std::vector<Complex> zeros;
  if (degree > 0) {
    // A x - B y = 0 as truncated power series, deg A, deg B <= degree.
    const int w = degree + 1;
    CMatrix m = CMatrix::Zero(n, 2 * w);
    for (int i = 0; i < w; ++i) {
      m.col(i).tail(n - i) = xv.head(n - i);
      m.col(w + i).tail(n - i) = -yv.head(n - i);
    }
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    out.null_singular_value = svd.singularValues()(2 * w - 1);
    const CVector a = svd.matrixV().col(2 * w - 1).head(w);
    zeros = Polynomial(a).roots();
    if (static_cast<int>(zeros.size()) != degree)
      throw NumericalError("inner_quotient: numerator lost degree, the quotient is not inner of the expected degree");
    for (const Complex z : zeros)
      if (!(std::abs(z) < 1.0)) throw NumericalError("inner_quotient: quotient has a zero outside the disk");
  }
  const BlaschkeProduct psi0(0.0, zeros);
  const ComplexSeries model = multiply(psi0.series(n), x) * s;
  const double scale = std::abs(inner_product(y, model)) / (model.norm() * model.norm());
  if (std::abs(scale - 1.0) > tol.residual_tol)
    throw NumericalError("inner_quotient: quotient is not unimodular");
  out.psi = psi0.with_phase(std::arg(phase_fit(y, model)));
  out.relation_residual = (y - multiply(out.psi.series(n), x) * s).norm() / yn;
  return out;
}

namespace {

void finish_decomposition(const HankelOperator& op, SchmidtDecomposition& d, const SchmidtSubspace& e_h,
                          const Tolerances& tol) {
  const int n = op.order();
  d.theta = align_theta(op, d.s, d.p_series, d.theta);
  if (e_h.multiplicity != d.theta.degree() + 1) {
    d.subspace_angle = std::numbers::pi / 2;
  }
  const ModelChecks mc = check_model_space(op, d.s, d.p_series, d.theta, e_h.basis);
  d.subspace_angle = std::max(d.subspace_angle, mc.angle);
  d.isometry_residual = mc.isometry;
  d.intertwining_residual = mc.intertwining;

  if (op.rational_symbol()) {
    if (auto r = try_rational_reconstruct(d.p_series, op.rational_symbol()->denominator(), tol.reconstruction_tol))
      d.p_rational = r->function;
  }
  if (d.p_rational) {
    const InnerOuter io = inner_outer_factor(*d.p_rational, tol);
    d.inner_factor = io.inner;
    d.outer_residual = io.modulus_residual;
    const double wind = winding_number(d.p_rational->sample(CircleGrid::for_order(n)));
    if (std::abs(wind - d.inner_factor.degree()) > 1e-3)
      throw NumericalError("inner factor degree disagrees with the winding number of p");
  } else {
    // Winding fallback: argument principle on the truncated p, zeros from the truncated polynomial.
    const CircleGrid grid = CircleGrid::for_order(n);
    const double wind = winding_number(grid.sample(d.p_series));
    const double rounded = std::round(wind);
    if (std::abs(wind - rounded) > 1e-3) throw NumericalError("winding number of p is not an integer");
    std::vector<Complex> inside;
    for (const Complex z : Polynomial(d.p_series.coeffs()).trimmed(1e-13).roots())
      if (std::abs(z) < 1.0 - tol.boundary_band) inside.push_back(z);
    if (static_cast<int>(inside.size()) != static_cast<int>(rounded))
      throw NumericalError("winding fallback could not locate the zeros of p");
    d.inner_factor = BlaschkeProduct(0.0, inside);
    d.inner_factor_from_winding = true;
  }
}

}  // namespace

SchmidtDecomposition extract_H_dominant(const HankelOperator& op, double s, const ComplexSeries& ones_s,
                                        const ComplexSeries& u_s, const Tolerances& tol) {
  const int n = op.order();
  const SchmidtSubspace e_h = schmidt_subspace(op, s, Which::H, tol);
  SchmidtDecomposition d;
  d.s = e_h.s;
  d.dominance = Dominance::H;
  d.multiplicity = e_h.multiplicity;
  const int deg = e_h.multiplicity - 1;
  const InnerQuotient q = inner_quotient(u_s, ones_s, d.s, deg, tol);
  if (q.relation_residual > tol.residual_tol) throw NumericalError("u_s = s psi 1_s does not hold for an inner psi");
  d.psi = q.psi;
  d.psi_relation_residual = q.relation_residual;
  d.p_series = ones_s.normalized();
  d.theta = q.psi;
  finish_decomposition(op, d, e_h, tol);

  // E_K(s) = 1_s K_psi and K_u T_p = s T_p K_psi there.
  const auto e_k = find_schmidt_subspace(op, s, Which::K, tol);
  const int kd = d.psi.degree();
  if (kd == 0) {
    d.companion_angle = e_k ? std::numbers::pi / 2 : 0.0;
    return d;
  }
  const Polynomial den = d.psi.denominator();
  const Complex kappa = h_theta_constant(d.psi);
  std::vector<ComplexSeries> cols;
  for (int j = 0; j < kd; ++j) {
    const Polynomial num = Polynomial::monomial(j);
    const double nrm = rational_norm(num, den, n);
    const ComplexSeries f = rational_series(num, den, n) * (1.0 / nrm);
    const ComplexSeries pf = multiply(d.p_series, f);
    cols.push_back(pf);
    const ComplexSeries kf = backshift(rational_series(Polynomial::monomial(kd - j, kappa), den, n + 1)) * (1.0 / nrm);
    const ComplexSeries rhs = multiply(d.p_series, kf.resized(n)) * d.s;
    d.companion_residual = std::max(d.companion_residual, (apply_K(op, pf) - rhs).norm());
  }
  d.companion_angle =
      e_k ? max_principal_angle(orthonormal_basis(as_columns(cols, n)), e_k->basis) : std::numbers::pi / 2;
  return d;
}

SchmidtDecomposition extract_K_dominant(const HankelOperator& op, double s, const ComplexSeries& u_tilde,
                                        const Tolerances& tol) {
  const int n = op.order();
  const SchmidtSubspace e_k = schmidt_subspace(op, s, Which::K, tol);
  const int deg = e_k.multiplicity - 1;
  if (deg == 0) throw DomainError("E_H(s) is trivial for this K-dominant value; there is nothing to decompose");
  const SchmidtSubspace e_h = schmidt_subspace(op, s, Which::H, tol);

  SchmidtDecomposition d;
  d.s = e_h.s;
  d.dominance = Dominance::K;
  d.multiplicity = e_h.multiplicity;
  const ComplexSeries ku = apply_K(op, u_tilde);
  const InnerQuotient q = inner_quotient(ku, u_tilde, e_k.s, deg, tol);
  if (q.relation_residual > tol.residual_tol)
    throw NumericalError("K_u u~ = s psi~ u~ does not hold for an inner psi~");
  d.psi = q.psi;
  d.psi_relation_residual = q.relation_residual;

  // theta = (psi~ - w) / (z (1 - conj(w) psi~)) = -(alpha_w o psi~) / z, w = psi~(0).
  const Complex w = d.psi.eval(0.0);
  const BlaschkeProduct shifted = frostman_compose(d.psi, DiskAutomorphism(w), tol.fit_tol);
  const auto near_zero = std::min_element(shifted.zeros().begin(), shifted.zeros().end(),
                                          [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  if (std::abs(*near_zero) > 1e-6) throw NumericalError("Frostman shift did not produce a zero at the origin");
  d.theta = shifted.without_zero_near(0.0);

  const ComplexSeries psi_series = d.psi.series(n);
  const ComplexSeries factor = ComplexSeries::one(n) - psi_series * std::conj(w);
  d.p_series = shift(multiply(u_tilde, factor)).normalized();
  finish_decomposition(op, d, e_h, tol);

  // E_K(s) = u~ Ran H_psi~, with K_u T_u~ = s T_u~ H_psi~ on it and
  // H_u T_u~ = s T_u~ S H_psi~ on the part vanishing at 0.
  const ComplexSeries ut = u_tilde.normalized();
  const Polynomial den = d.psi.denominator();
  const Complex kappa = h_theta_constant(d.psi);
  std::vector<ComplexSeries> cols;
  for (int j = 0; j <= deg; ++j) {
    const Polynomial num = Polynomial::monomial(j);
    const double nrm = rational_norm(num, den, n);
    const ComplexSeries f = rational_series(num, den, n) * (1.0 / nrm);
    const ComplexSeries uf = multiply(ut, f);
    cols.push_back(uf);
    const ComplexSeries hf = rational_series(Polynomial::monomial(deg - j, kappa), den, n) * (1.0 / nrm);
    const ComplexSeries rhs_k = multiply(ut, hf) * e_k.s;
    d.companion_residual = std::max(d.companion_residual, (apply_K(op, uf) - rhs_k).norm());
    if (j >= 1) {
      const ComplexSeries rhs_h = multiply(ut, shift(hf)) * e_k.s;
      d.companion_residual = std::max(d.companion_residual, (apply_H(op, uf) - rhs_h).norm());
    }
  }
  d.companion_angle = max_principal_angle(orthonormal_basis(as_columns(cols, n)), e_k.basis);
  return d;
}

SchmidtDecomposition decompose(const HankelOperator& op, double s, const Tolerances& tol) {
  const DominanceResult r = classify_dominance(op, s, tol);
  if (r.dominance == Dominance::H) return extract_H_dominant(op, s, r.ones_s, r.u_s, tol);
  return extract_K_dominant(op, s, r.u_tilde, tol);
}

InnerParameter extract_inner_parameter(const HankelOperator& op, double s, const Tolerances& tol) {
  const DominanceResult r = classify_dominance(op, s, tol);
  InnerParameter out;
  out.dominance = r.dominance;
  InnerQuotient q;
  if (r.dominance == Dominance::H) {
    q = inner_quotient(r.u_s, r.ones_s, r.e_h->s, r.e_h->multiplicity - 1, tol);
    out.projection_norm = r.u_s.norm();
  } else {
    q = inner_quotient(r.k_u_tilde, r.u_tilde, r.e_k->s, r.e_k->multiplicity - 1, tol);
    out.projection_norm = r.u_tilde.norm();
  }
  out.psi = q.psi;
  out.relation_residual = q.relation_residual;
  return out;
}

InnerOuter inner_outer_factor(const RationalFunction& p, const Tolerances& tol) {
  const Polynomial& q = p.numerator();
  if (q.is_zero()) throw DomainError("inner_outer_factor: zero function");
  std::vector<Complex> inside, outside;
  for (const Complex r : q.roots()) {
    const double m = std::abs(r);
    if (std::abs(m - 1.0) <= tol.boundary_band)
      throw NumericalError("inner_outer_factor: numerator root within the boundary band");
    (m < 1.0 ? inside : outside).push_back(r);
  }
  InnerOuter out;
  out.inner = BlaschkeProduct(0.0, inside);
  // p / phi: each inside root (z - r) becomes -(1 - conj(r) z).
  const double sign = inside.size() % 2 == 0 ? 1.0 : -1.0;
  Polynomial num = Polynomial::from_roots(outside, q.leading() * sign);
  for (const Complex r : inside) num = num * Polynomial({1.0, -std::conj(r)});
  out.outer = RationalFunction(num, p.denominator(), 0.0);

  const CircleGrid grid(1024);
  const CVector ps = p.sample(grid);
  const CVector os = out.outer.sample(grid);
  const CVector is = out.inner.sample(grid);
  const double scale = std::max(ps.cwiseAbs().maxCoeff(), 1e-300);
  out.modulus_residual = (os.cwiseAbs() - ps.cwiseAbs()).cwiseAbs().maxCoeff() / scale;
  const double product_residual = (is.cwiseProduct(os) - ps).cwiseAbs().maxCoeff() / scale;
  if (product_residual > 1e-8 || out.modulus_residual > 1e-8)
    throw NumericalError("inner_outer_factor: factorization does not reproduce p on the circle");
  return out;
}

int count_above(const HankelOperator& op, double s, const Tolerances& tol) {
  int n = 0;
  for (const SingularCluster& c : singular_clusters(op, tol, Which::H))
    if (c.s > s * (1.0 + tol.rel_gap)) n += c.multiplicity;
  return n;
}

CMatrix truncated_multiples_basis(const BlaschkeProduct& phi, int n) {
  if (phi.degree() == 0) return CMatrix::Identity(n, n);
  return orthogonal_complement(model_space_matrix(phi, false, n));
}

DegreeReport verify_degree_count(const HankelOperator& op, const SchmidtDecomposition& d, const Tolerances& tol) {
  DegreeReport r;
  r.n_s = count_above(op, d.s, tol);
  r.deg_phi = d.inner_factor.degree();
  r.degree_ok = r.n_s == r.deg_phi;
  const CMatrix q = truncated_multiples_basis(d.inner_factor, op.order());
  r.restricted_norm = spectral_norm(op.matrix() * q.conjugate());
  r.norm_ok = std::abs(r.restricted_norm - d.s) <= tol.norm_tol * d.s;
  return r;
}

SelfAdjointSplit selfadjoint_eigen_split(const HankelOperator& op, double s, const Tolerances& tol) {
  const CVector& g = op.symbol().coeffs();
  const double gmax = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
  if (g.imag().cwiseAbs().maxCoeff() > 1e-13 * gmax) throw DomainError("selfadjoint_eigen_split needs a real symbol");
  const int n = op.order();

  SelfAdjointSplit out;
  std::optional<SingularCluster> cluster;
  for (const SingularCluster& c : singular_clusters(op, tol, Which::H))
    if (std::abs(c.s - s) <= std::max(tol.rel_gap * s, c.width)) cluster = c;
  if (!cluster) throw DomainError("s is not a singular value cluster");
  out.s = cluster->s;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.matrix().real());
  const double band = std::max(tol.rel_gap * out.s, 2.0 * cluster->width);
  std::vector<Eigen::Index> plus, minus;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double l = eig.eigenvalues()(i);
    if (std::abs(std::abs(l) - out.s) <= band) (l > 0 ? plus : minus).push_back(i);
  }
  out.dim_plus = static_cast<int>(plus.size());
  out.dim_minus = static_cast<int>(minus.size());
  if (out.dim_plus + out.dim_minus != cluster->multiplicity)
    throw NumericalError("eigenvalue split does not account for the singular value cluster");

  // p real: rotate so the first non-negligible coefficient is positive.
  const SchmidtDecomposition d = decompose(op, out.s, tol);
  const CVector& pc = d.p_series.coeffs();
  const double pmax = pc.cwiseAbs().maxCoeff();
  Eigen::Index m = 0;
  while (m < pc.size() && std::abs(pc(m)) <= 1e-8 * pmax) ++m;
  const Complex rot = std::conj(pc(m)) / std::abs(pc(m));
  const CVector pr = pc * rot;
  if (pr.imag().cwiseAbs().maxCoeff() > 1e-8) throw NumericalError("isometric multiplier is not real up to a constant");
  const ComplexSeries p(pr.real().cast<Complex>());
  const BlaschkeProduct theta = align_theta(op, out.s, p, d.theta);
  const Complex kappa = h_theta_constant(theta);
  if (std::abs(kappa.imag()) > 1e-6) throw NumericalError("H_theta is not real on the real model space");
  const double sign = kappa.real() > 0 ? 1.0 : -1.0;

  const int k = theta.degree();
  const Polynomial theta_den = theta.denominator();
  std::vector<Complex> dc;
  for (const Complex c : theta_den.coeffs()) dc.emplace_back(c.real());
  const Polynomial den(std::move(dc));
  // H_theta acts on real numerators P (deg <= k) as P -> sign * reverse(P).
  std::vector<ComplexSeries> fix, antifix;
  for (int i = 0; 2 * i <= k; ++i) {
    const int j = k - i;
    std::vector<Complex> a(static_cast<size_t>(k) + 1, Complex{}), b = a;
    if (i == j) {
      a[i] = 1.0;
      (sign > 0 ? fix : antifix).push_back(multiply(p, rational_series(Polynomial(a), den, n)));
      continue;
    }
    a[i] = 1.0;
    a[j] = sign;
    b[i] = 1.0;
    b[j] = -sign;
    fix.push_back(multiply(p, rational_series(Polynomial(a), den, n)));
    antifix.push_back(multiply(p, rational_series(Polynomial(b), den, n)));
  }
  auto eigvecs = [&](const std::vector<Eigen::Index>& idx) {
    CMatrix v(n, static_cast<Eigen::Index>(idx.size()));
    for (size_t c = 0; c < idx.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(idx[c]).cast<Complex>();
    return v;
  };
  auto span = [&](const std::vector<ComplexSeries>& cols) {
    return cols.empty() ? CMatrix(n, 0) : orthonormal_basis(as_columns(cols, n));
  };
  out.angle_plus = max_principal_angle(span(fix), eigvecs(plus));
  out.angle_minus = max_principal_angle(span(antifix), eigvecs(minus));
  return out;
}

UniquenessReport verify_uniqueness(const SchmidtDecomposition& a, const SchmidtDecomposition& b, double tol) {
  UniquenessReport r;
  const int n = std::min(a.p_series.size(), b.p_series.size());
  const ComplexSeries pa = a.p_series.resized(n);
  const ComplexSeries pb = b.p_series.resized(n);
  r.c_p = phase_fit(pb, pa);
  r.p_residual = (pb - pa * r.c_p).norm();
  const InnerComparison cmp = compare_inner(b.theta, a.theta);
  r.zero_distance = cmp.zero_distance;
  r.c_theta = std::polar(1.0, cmp.phase_difference);
  r.aligned = r.p_residual < tol && r.zero_distance < tol;
  return r;
}

double dichotomy_angle(const HankelOperator& op, const DominanceResult& d) {
  const int n = op.order();
  const CVector u = op.u().coeffs();
  const CMatrix eh = d.e_h ? d.e_h->basis : CMatrix(n, 0);
  const CMatrix ek = d.e_k ? d.e_k->basis : CMatrix(n, 0);
  if (d.dominance == Dominance::H) return max_principal_angle(intersect_orthogonal(eh, u), ek);
  return max_principal_angle(intersect_orthogonal(ek, u), eh);
}

double shift_relation_angle(const HankelOperator& op, const DominanceResult& d) {
  const int n = op.order();
  const CVector u = op.u().coeffs();
  CMatrix space, against;
  CVector e0 = CVector::Zero(n);
  e0(0) = 1.0;
  if (d.dominance == Dominance::H) {
    space = intersect_orthogonal(d.e_h->basis, u);
    against = intersect_orthogonal(d.e_h->basis, e0);
  } else {
    space = intersect_orthogonal(d.e_k->basis, apply_K(op, u));
    against = intersect_orthogonal(d.e_k->basis, u);
  }
  CMatrix shifted = CMatrix::Zero(n, space.cols());
  if (n > 1) shifted.bottomRows(n - 1) = space.topRows(n - 1);
  return max_principal_angle(space.cols() ? orthonormal_basis(shifted) : shifted, against);
}

double commutation_residual(const HankelOperator& op, const Polynomial& f, const ComplexSeries& g) {
  const int n = op.order();
  const int df = std::max(f.degree(), 0);
  if (g.size() != n) throw DomainError("commutation_residual: size mismatch");
  if (4 * df > n) throw DomainError("commutation_residual: polynomial degree too large");
  for (int k = n / 2; k < n; ++k)
    if (g[k] != 0.0) throw DomainError("commutation_residual: g must have degree < N/2");
  const ComplexSeries fs = ComplexSeries::from_polynomial(f, n);
  const CVector lhs = apply_H(op, multiply(fs, g).coeffs());
  const CVector h = apply_H(op, g.coeffs());
  double worst = 0.0;
  for (int j = 0; j < n - df; ++j) {
    Complex rhs{};
    for (int i = 0; i <= df; ++i) rhs += std::conj(f.coeff(i)) * h(j + i);
    worst = std::max(worst, std::abs(lhs(j) - rhs));
  }
  double f1 = 0.0;
  for (const Complex c : f.coeffs()) f1 += std::abs(c);
  const double scale = f1 * g.norm() * std::max(op.norm(), 1e-300);
  return scale > 0.0 ? worst / scale : 0.0;
}

double multiplier_isometry_residual(const BlaschkeProduct& theta, const CVector& p_samples, const CircleGrid& grid,
                                    bool extended) {
  const int count = theta.degree() + (extended ? 1 : 0);
  if (count == 0) return 0.0;
  const Polynomial den = theta.denominator();
  CMatrix e(grid.size(), count);
  for (int k = 0; k < grid.size(); ++k) {
    const Complex z = grid.point(k);
    const Complex dz = den(z);
    Complex zj = 1.0;
    for (int j = 0; j < count; ++j, zj *= z) e(k, j) = zj / dz;
  }
  const CMatrix pe = p_samples.asDiagonal() * e;
  const CMatrix g1 = e.adjoint() * e / static_cast<double>(grid.size());
  const CMatrix g2 = pe.adjoint() * pe / static_cast<double>(grid.size());
  return (g2 - g1).cwiseAbs().maxCoeff() / g1.cwiseAbs().maxCoeff();
}

CVector ratio_multiplier_samples(const BlaschkeProduct& theta, const CVector& a, const CVector& b) {
  const CircleGrid grid(static_cast<int>(a.size()));
  const CVector t = theta.sample(grid);
  return a.array() / (1.0 - t.array() * b.array());
}

}  // namespace hankel_lab
