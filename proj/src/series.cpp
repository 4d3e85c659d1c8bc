#include "hankel_lab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace hankel_lab {

// ---------------------------------------------------------------- ComplexSeries

ComplexSeries::ComplexSeries(CVector coeffs, double tail_bound) : coeffs_(std::move(coeffs)), tail_bound_(tail_bound) {
  if (tail_bound_ < 0.0) throw DomainError("tail_bound must be nonnegative");
}

ComplexSeries ComplexSeries::monomial(int k, int n, Complex c) {
  CVector v = CVector::Zero(n);
  if (k < n) v(k) = c;
  return ComplexSeries(std::move(v), k < n ? 0.0 : std::abs(c));
}

ComplexSeries ComplexSeries::from_polynomial(const Polynomial& p, int n) {
  CVector v = CVector::Zero(n);
  double tail2 = 0.0;
  for (int k = 0; k <= p.degree(); ++k) {
    if (k < n)
      v(k) = p.coeff(k);
    else
      tail2 += std::norm(p.coeff(k));
  }
  return ComplexSeries(std::move(v), std::sqrt(tail2));
}

Complex ComplexSeries::evaluate(Complex z) const {
  Complex acc{};
  for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) acc = acc * z + coeffs_(k);
  return acc;
}

ComplexSeries ComplexSeries::resized(int n) const {
  if (n >= size()) {
    CVector v = CVector::Zero(n);
    v.head(size()) = coeffs_;
    return ComplexSeries(std::move(v), tail_bound_);
  }
  const double dropped = coeffs_.tail(size() - n).norm();
  return ComplexSeries(coeffs_.head(n), std::hypot(tail_bound_, dropped));
}

ComplexSeries ComplexSeries::conj_coeffs() const { return ComplexSeries(coeffs_.conjugate(), tail_bound_); }

ComplexSeries ComplexSeries::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw DomainError("cannot normalize the zero series");
  return ComplexSeries(coeffs_ / nrm, tail_bound_ / nrm);
}

ComplexSeries ComplexSeries::operator+(const ComplexSeries& o) const {
  if (o.size() != size()) throw DomainError("series truncation orders differ");
  return ComplexSeries(coeffs_ + o.coeffs_, tail_bound_ + o.tail_bound_);
}

ComplexSeries ComplexSeries::operator-(const ComplexSeries& o) const {
  if (o.size() != size()) throw DomainError("series truncation orders differ");
  return ComplexSeries(coeffs_ - o.coeffs_, tail_bound_ + o.tail_bound_);
}

ComplexSeries ComplexSeries::operator*(Complex c) const { return ComplexSeries(coeffs_ * c, tail_bound_ * std::abs(c)); }

Complex inner_product(const ComplexSeries& f, const ComplexSeries& g) {
  const int n = std::min(f.size(), g.size());
  return g.coeffs().head(n).dot(f.coeffs().head(n));  // Eigen's dot conjugates the left operand
}

ComplexSeries multiply(const ComplexSeries& a, const ComplexSeries& b) {
  if (a.size() != b.size()) throw DomainError("multiply: truncation orders differ");
  const int n = a.size();
  CVector c = CVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    const Complex ai = a[i];
    if (ai == Complex{}) continue;
    for (int j = 0; i + j < n; ++j) c(i + j) += ai * b[j];
  }
  const double tail = a.norm() * b.tail_bound() + b.norm() * a.tail_bound() + a.tail_bound() * b.tail_bound();
  return ComplexSeries(std::move(c), tail);
}

ComplexSeries shift(const ComplexSeries& f) {
  const int n = f.size();
  if (n == 0) return f;
  CVector c = CVector::Zero(n);
  c.tail(n - 1) = f.coeffs().head(n - 1);
  return ComplexSeries(std::move(c), std::hypot(f.tail_bound(), std::abs(f[n - 1])));
}

ComplexSeries backshift(const ComplexSeries& f) {
  const int n = f.size();
  if (n == 0) return f;
  CVector c = CVector::Zero(n);
  c.head(n - 1) = f.coeffs().tail(n - 1);
  return ComplexSeries(std::move(c), f.tail_bound());
}

DivisionResult series_divide(const ComplexSeries& num, const ComplexSeries& den, double division_floor) {
  if (num.size() != den.size()) throw DomainError("series_divide: truncation orders differ");
  const int n = num.size();
  const double den_scale = std::max(1.0, den.norm());
  const double num_scale = std::max(1.0, num.norm());
  auto order = [](const ComplexSeries& s, double cut) {
    int k = 0;
    while (k < s.size() && std::abs(s[k]) <= cut) ++k;
    return k;
  };
  const int k_den = order(den, division_floor * den_scale);
  if (k_den >= n) throw DomainError("series_divide: denominator vanishes to truncation order");
  const int k_num = order(num, division_floor * num_scale);
  if (k_num < k_den)
    throw DomainError("series_divide: numerator vanishes to lower order than the denominator");
  const Complex lead = den[k_den];
  if (std::abs(lead) <= division_floor) throw DomainError("series_divide: leading coefficient below division floor");

  const int m = n - k_den;
  CVector q = CVector::Zero(n);
  for (int j = 0; j < m; ++j) {
    Complex acc = num[j + k_den];
    for (int i = 0; i < j; ++i) acc -= q(i) * den[k_den + j - i];
    q(j) = acc / lead;
  }
  const double tail = (k_den > 0 && m > 0) ? std::abs(q(m - 1)) : 0.0;
  ComplexSeries quotient(std::move(q), tail);
  const ComplexSeries back = multiply(quotient.resized(n), den);
  const double nn = num.norm();
  const double residual = nn > 0.0 ? (back.coeffs() - num.coeffs()).norm() / nn : back.norm();
  return {std::move(quotient), residual};
}

// ---------------------------------------------------------------- CircleGrid

namespace {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace

CircleGrid::CircleGrid(int m) : m_(m) {
  if (!is_power_of_two(m)) throw DomainError("circle grid size must be a power of two");
}

CircleGrid CircleGrid::for_order(int n) {
  int m = 1024;
  while (m < 4 * n) m *= 2;
  return CircleGrid(m);
}

double CircleGrid::angle(int k) const { return 2.0 * std::numbers::pi * k / m_; }

Complex CircleGrid::point(int k) const { return std::polar(1.0, angle(k)); }

CVector CircleGrid::sample(const ComplexSeries& f) const {
  std::vector<Complex> spec(static_cast<size_t>(m_), Complex{});
  for (int k = 0; k < f.size(); ++k) spec[static_cast<size_t>(k % m_)] += f[k];
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> vals;
  fft.inv(vals, spec);
  return Eigen::Map<CVector>(vals.data(), m_);
}

CVector CircleGrid::fourier(const CVector& samples) const {
  if (samples.size() != m_) throw DomainError("sample count does not match the grid");
  std::vector<Complex> in(samples.data(), samples.data() + m_);
  std::vector<Complex> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  CVector c = Eigen::Map<CVector>(out.data(), m_);
  return c / static_cast<double>(m_);
}

ComplexSeries CircleGrid::szego_project(const CVector& samples, int n) const {
  if (m_ < 2 * n) throw DomainError("szego_project: grid must have at least 2N points");
  const CVector c = fourier(samples);
  const double tail = c.segment(n, m_ / 2 - n).norm();
  return ComplexSeries(c.head(n), tail);
}

Complex CircleGrid::inner(const CVector& f, const CVector& g) const {
  return g.dot(f) / static_cast<double>(m_);
}

// ---------------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator, double margin)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  const Complex d0 = den_.coeff(0);
  if (std::abs(d0) <= 1e-300) throw DomainError("rational function has a pole at the origin");
  num_ = num_ * (1.0 / d0);
  den_ = den_ * (1.0 / d0);

  poles_ = den_.roots();
  for (const Complex p : poles_) {
    if (std::abs(p) <= 1.0 + margin) throw DomainError("rational function has a pole inside or near the closed disk");
  }
  if (num_.is_zero()) {
    den_ = Polynomial({1.0});
    poles_.clear();
    return;
  }
  // Cancel common roots.
  std::vector<Complex> kept;
  for (const Complex p : poles_) {
    const double scale = std::max(1.0, num_.max_abs()) * std::pow(std::abs(p), std::max(0, num_.degree()));
    if (num_.degree() >= 1 && std::abs(num_(p)) <= 1e-10 * scale) {
      num_ = num_.deflate(p);
      den_ = den_.deflate(p);
    } else {
      kept.push_back(p);
    }
  }
  if (kept.size() != poles_.size()) {
    const Complex c0 = den_.coeff(0);
    num_ = num_ * (1.0 / c0);
    den_ = den_ * (1.0 / c0);
    poles_ = std::move(kept);
  }
}

double RationalFunction::min_pole_modulus() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Complex p : poles_) m = std::min(m, std::abs(p));
  return m;
}

CVector RationalFunction::sample(const CircleGrid& grid) const {
  CVector v(grid.size());
  for (int k = 0; k < grid.size(); ++k) v(k) = (*this)(grid.point(k));
  return v;
}

ComplexSeries taylor_of_rational(const RationalFunction& r, int n) {
  const Polynomial& num = r.numerator();
  const Polynomial& den = r.denominator();
  const int total = 2 * n;
  std::vector<Complex> c(static_cast<size_t>(total), Complex{});
  const Complex d0 = den.coeff(0);
  for (int k = 0; k < total; ++k) {
    Complex acc = num.coeff(k);
    for (int i = 1; i <= std::min(k, den.degree()); ++i) acc -= den.coeff(i) * c[static_cast<size_t>(k - i)];
    c[static_cast<size_t>(k)] = acc / d0;
  }
  double tail2 = 0.0;
  for (int k = n; k < total; ++k) tail2 += std::norm(c[static_cast<size_t>(k)]);
  const double rho = r.min_pole_modulus();
  if (std::isfinite(rho)) {
    const double q = 1.0 / (rho * rho);
    tail2 += std::norm(c.back()) * q / (1.0 - q);
  }
  CVector head(n);
  for (int k = 0; k < n; ++k) head(k) = c[static_cast<size_t>(k)];
  return ComplexSeries(std::move(head), std::sqrt(tail2));
}

std::optional<ReconstructionResult> try_rational_reconstruct(const ComplexSeries& f, const Polynomial& den, double tol,
                                                             int slack) {
  const int n = f.size();
  const int d = std::max(0, den.degree());
  if (2 * d >= n) throw DomainError("rational_reconstruct: denominator degree must be below N/2");
  const double fn = f.norm();
  if (fn == 0.0) return ReconstructionResult{RationalFunction(Polynomial{}, den), 0.0};

  const int m = std::max(d - 1, 0) + slack;  // numerator degree bound
  const ComplexSeries base = taylor_of_rational(RationalFunction(Polynomial({1.0}), den, 0.0), n);
  CMatrix a = CMatrix::Zero(n, m + 1);
  for (int j = 0; j <= m; ++j) a.col(j).tail(n - j) = base.coeffs().head(n - j);
  const CVector q = a.colPivHouseholderQr().solve(f.coeffs());
  const double residual = (a * q - f.coeffs()).norm() / fn;
  if (!(residual <= tol)) return std::nullopt;

  Polynomial numerator = Polynomial(q).trimmed(1e-10);
  return ReconstructionResult{RationalFunction(std::move(numerator), den, 0.0), residual};
}

ReconstructionResult rational_reconstruct(const ComplexSeries& f, const Polynomial& den, double tol, int slack) {
  auto r = try_rational_reconstruct(f, den, tol, slack);
  if (!r) throw NumericalError("rational_reconstruct: series is not rational over the given denominator");
  return *std::move(r);
}

CVector boundary_values(const ComplexSeries& f, const CircleGrid& grid, const std::optional<Polynomial>& den,
                        double tol) {
  if (den) {
    if (auto r = try_rational_reconstruct(f, *den, tol)) return r->function.sample(grid);
  }
  return grid.sample(f);
}

}  // namespace hankel_lab
