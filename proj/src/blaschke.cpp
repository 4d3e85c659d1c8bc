#include "hankel_lab/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

namespace hankel_lab {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(double phase, std::vector<Complex> zeros)
    : phase_(wrap_phase(phase)), zeros_(std::move(zeros)) {
  for (const Complex z : zeros_) {
    if (!(std::abs(z) < 1.0)) throw DomainError("Blaschke zero outside the open unit disk");
  }
}

BlaschkeProduct BlaschkeProduct::monomial(int k) {
  return BlaschkeProduct(k % 2 == 0 ? 0.0 : kPi, std::vector<Complex>(static_cast<size_t>(k), Complex{}));
}

Complex BlaschkeProduct::eval(Complex z) const {
  Complex acc = std::polar(1.0, phase_);
  for (const Complex a : zeros_) {
    const Complex den = 1.0 - std::conj(a) * z;
    if (std::abs(den) < 1e-14) throw DomainError("Blaschke product evaluated at a pole");
    acc *= (a - z) / den;
  }
  return acc;
}

Polynomial BlaschkeProduct::numerator() const {
  // prod (a - z) = (-1)^k prod (z - a)
  const double sign = (zeros_.size() % 2 == 0) ? 1.0 : -1.0;
  return Polynomial::from_roots(zeros_, std::polar(sign, phase_));
}

Polynomial BlaschkeProduct::denominator() const {
  Polynomial d({1.0});
  for (const Complex a : zeros_) d = d * Polynomial({1.0, -std::conj(a)});
  return d;
}

RationalFunction BlaschkeProduct::as_rational() const {
  // Zeros strictly inside the disk put the poles 1/conj(a) outside; allow any
  // positive margin here since |a| may be close to 1.
  return RationalFunction(numerator(), denominator(), 0.0);
}

CVector BlaschkeProduct::sample(const CircleGrid& grid) const {
  CVector v(grid.size());
  for (int k = 0; k < grid.size(); ++k) v(k) = eval(grid.point(k));
  return v;
}

BlaschkeProduct BlaschkeProduct::without_zero_near(Complex target) const {
  if (zeros_.empty()) throw DomainError("no zero to remove");
  auto it = std::min_element(zeros_.begin(), zeros_.end(), [target](Complex l, Complex r) {
    return std::abs(l - target) < std::abs(r - target);
  });
  std::vector<Complex> rest = zeros_;
  rest.erase(rest.begin() + (it - zeros_.begin()));
  return BlaschkeProduct(phase_, std::move(rest));
}

DiskAutomorphism::DiskAutomorphism(Complex w_, double extra) : w(w_), extra_phase(extra) {
  if (!(std::abs(w) < 1.0)) throw DomainError("disk automorphism parameter must lie in the open disk");
}

Complex DiskAutomorphism::eval(Complex z) const {
  return std::polar(1.0, extra_phase) * (w - z) / (1.0 - std::conj(w) * z);
}

std::vector<RationalFunction> model_space_basis(const BlaschkeProduct& theta, bool extended) {
  const Polynomial d = theta.denominator();
  const int count = theta.degree() + (extended ? 1 : 0);
  std::vector<RationalFunction> basis;
  basis.reserve(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j) basis.emplace_back(Polynomial::monomial(j), d, 0.0);
  return basis;
}

CMatrix model_space_matrix(const BlaschkeProduct& theta, bool extended, int n) {
  const int count = theta.degree() + (extended ? 1 : 0);
  const ComplexSeries base = taylor_of_rational(RationalFunction(Polynomial({1.0}), theta.denominator(), 0.0), n);
  CMatrix m = CMatrix::Zero(n, count);
  for (int j = 0; j < count && j < n; ++j) m.col(j).tail(n - j) = base.coeffs().head(n - j);
  return m;
}

ModelSpaceImage apply_H_theta(const BlaschkeProduct& theta, const ComplexSeries& f, double tol) {
  const int n = f.size();
  const CMatrix basis = model_space_matrix(theta, true, n);
  double residual = 0.0;
  const double fn = f.norm();
  if (fn > 0.0) {
    const CVector c = basis.colPivHouseholderQr().solve(f.coeffs());
    residual = (basis * c - f.coeffs()).norm() / fn;
  }
  if (!(residual <= tol)) throw NumericalError("apply_H_theta: vector has mass outside Ran H_theta");

  const CircleGrid grid = CircleGrid::for_order(n);
  const CVector fs = grid.sample(f);
  const CVector ts = theta.sample(grid);
  const CVector prod = ts.cwiseProduct(fs.conjugate());
  return {grid.szego_project(prod, n), residual};
}

Polynomial apply_H_theta_numerator(const BlaschkeProduct& theta, const Polynomial& p) {
  const int k = theta.degree();
  if (p.degree() > k) throw DomainError("numerator degree exceeds deg theta");
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return p.reflected(k) * std::polar(sign, theta.phase());
}

BlaschkeProduct frostman_compose(const BlaschkeProduct& theta, const DiskAutomorphism& a, double tol) {
  const Polynomial num = theta.numerator();
  const Polynomial den = theta.denominator();
  // alpha o theta = e^{i eps} (w D - N) / (D - conj(w) N)
  const Polynomial top = den * a.w - num;
  std::vector<Complex> zeros = top.trimmed(1e-14).roots();
  // w D - N has exact degree k: its leading coefficient has modulus >= 1 - |w|.
  if (static_cast<int>(zeros.size()) != theta.degree())
    throw NumericalError("frostman_compose: degree changed during root finding");
  for (Complex& z : zeros) {
    if (!(std::abs(z) < 1.0)) throw NumericalError("frostman_compose: root outside the disk");
  }
  const CircleGrid grid(1024);
  const BlaschkeProduct unphased(0.0, zeros);
  CVector target(grid.size());
  for (int k = 0; k < grid.size(); ++k) target(k) = a.eval(theta.eval(grid.point(k)));
  const CVector base = unphased.sample(grid);
  const Complex c = fit_unimodular_constant(target, base);
  const BlaschkeProduct out(std::arg(c), zeros);
  const double err = (out.sample(grid) - target).cwiseAbs().maxCoeff();
  if (!(err <= tol)) throw NumericalError("frostman_compose: root-finding residual above tolerance");
  return out;
}

RationalFunction crofoot_multiplier(const BlaschkeProduct& theta, Complex w) {
  if (!(std::abs(w) < 1.0)) throw DomainError("crofoot_multiplier: |w| must be < 1");
  const Polynomial num = theta.numerator();
  const Polynomial den = theta.denominator();
  const double scale = std::sqrt(1.0 - std::norm(w));
  return RationalFunction(den * scale, den - num * std::conj(w), 0.0);
}

double winding_number(const CVector& samples) {
  double total = 0.0;
  const Eigen::Index m = samples.size();
  for (Eigen::Index k = 0; k < m; ++k) {
    const Complex a = samples(k);
    const Complex b = samples((k + 1) % m);
    total += std::arg(b / a);
  }
  return total / (2.0 * kPi);
}

Complex fit_unimodular_constant(const CVector& values, const CVector& reference) {
  const Complex c = reference.dot(values);  // sum conj(ref) * values
  if (std::abs(c) == 0.0) return 1.0;
  return c / std::abs(c);
}

BlaschkeProduct fit_inner_from_samples(const CVector& samples, const CircleGrid& grid, double unimodularity_tol,
                                       double fit_tol) {
  if (samples.size() != grid.size()) throw DomainError("fit_inner_from_samples: sample count does not match grid");
  const double unimod = (samples.cwiseAbs().array() - 1.0).abs().maxCoeff();
  if (!(unimod <= unimodularity_tol)) throw NumericalError("fit_inner_from_samples: samples are not unimodular");

  const double w = winding_number(samples);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 1e-3) throw NumericalError("fit_inner_from_samples: non-integer winding number");
  const int d = static_cast<int>(rounded);
  if (d < 0) throw NumericalError("fit_inner_from_samples: negative winding, samples are not analytic-inner");
  if (d > 64) throw NumericalError("fit_inner_from_samples: degree above 64 is not supported");

  std::vector<Complex> zeros;
  if (d > 0) {
    const CVector c = grid.fourier(samples);
    const int k_max = grid.size() / 2;
    const int rows = k_max - d - 1;
    CMatrix t(rows, d + 1);
    for (int r = 0; r < rows; ++r) {
      const int k = d + 1 + r;
      for (int i = 0; i <= d; ++i) t(r, i) = c(k - i);
    }
    Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeFullV);
    const CVector b = svd.matrixV().col(d);
    std::vector<Complex> a(static_cast<size_t>(d) + 1, Complex{});
    for (int k = 0; k <= d; ++k)
      for (int i = 0; i <= k; ++i) a[static_cast<size_t>(k)] += b(i) * c(k - i);
    zeros = Polynomial(std::move(a)).roots();
    if (static_cast<int>(zeros.size()) != d) throw NumericalError("fit_inner_from_samples: lost zeros in root finding");
    for (const Complex z : zeros) {
      if (!(std::abs(z) < 1.0)) throw NumericalError("fit_inner_from_samples: recovered zero outside the disk");
    }
  }
  const BlaschkeProduct unphased(0.0, zeros);
  const Complex c = fit_unimodular_constant(samples, unphased.sample(grid));
  BlaschkeProduct out(std::arg(c), std::move(zeros));
  const double err = (out.sample(grid) - samples).cwiseAbs().maxCoeff();
  if (!(err <= fit_tol)) throw NumericalError("fit_inner_from_samples: fit residual above tolerance");
  return out;
}

InnerComparison compare_inner(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  InnerComparison r;
  r.zero_distance = zero_set_distance(a.zeros(), b.zeros());
  r.phase_difference = std::arg(std::polar(1.0, a.phase() - b.phase()));
  return r;
}

}  // namespace hankel_lab
