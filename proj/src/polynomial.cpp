#include "hankel_lab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace hankel_lab {

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim_exact(); }

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim_exact(); }

Polynomial::Polynomial(const CVector& coeffs) : coeffs_(coeffs.data(), coeffs.data() + coeffs.size()) {
  trim_exact();
}

Polynomial Polynomial::monomial(int degree, Complex c) {
  std::vector<Complex> v(static_cast<size_t>(degree) + 1, Complex{});
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> c{lead};
  for (const Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex{});
    for (size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

void Polynomial::trim_exact() {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<size_t>(k)];
}

double Polynomial::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex Polynomial::derivative_at(Complex z) const {
  Complex acc{};
  for (int k = degree(); k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs_[static_cast<size_t>(k)];
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Complex> r(std::max(coeffs_.size(), o.coeffs_.size()), Complex{});
  for (size_t k = 0; k < coeffs_.size(); ++k) r[k] += coeffs_[k];
  for (size_t k = 0; k < o.coeffs_.size(); ++k) r[k] += o.coeffs_[k];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Complex(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Complex> r(coeffs_.size() + o.coeffs_.size() - 1, Complex{});
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(Complex c) const {
  std::vector<Complex> r = coeffs_;
  for (auto& x : r) x *= c;
  return Polynomial(std::move(r));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs();
  std::vector<Complex> r = coeffs_;
  while (!r.empty() && std::abs(r.back()) <= cut) r.pop_back();
  return Polynomial(std::move(r));
}

Polynomial Polynomial::deflate(Complex r) const {
  if (degree() < 1) return {};
  const int n = degree();
  std::vector<Complex> q(static_cast<size_t>(n), Complex{});
  Complex carry = coeffs_[static_cast<size_t>(n)];
  for (int k = n - 1; k >= 0; --k) {
    q[static_cast<size_t>(k)] = carry;
    carry = coeffs_[static_cast<size_t>(k)] + carry * r;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::reflected(int n) const {
  std::vector<Complex> r(static_cast<size_t>(n) + 1, Complex{});
  for (int k = 0; k <= n; ++k) r[static_cast<size_t>(n - k)] = std::conj(coeff(k));
  return Polynomial(std::move(r));
}

std::vector<Complex> Polynomial::roots(double zero_tol) const {
  const Polynomial p = trimmed(1e-14);
  std::vector<Complex> out;
  if (p.degree() < 1) return out;

  const double cut = zero_tol * p.max_abs();
  size_t low = 0;
  while (low < p.coeffs_.size() - 1 && std::abs(p.coeffs_[low]) <= cut) {
    out.emplace_back(0.0, 0.0);
    ++low;
  }
  const std::vector<Complex> c(p.coeffs_.begin() + static_cast<long>(low), p.coeffs_.end());
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return out;

  CMatrix companion = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
  const Polynomial reduced{std::vector<Complex>(c)};
  for (int i = 0; i < n; ++i) {
    Complex r = solver.eigenvalues()(i);
    double res = std::abs(reduced(r));
    for (int it = 0; it < 8; ++it) {
      const Complex d = reduced.derivative_at(r);
      if (std::abs(d) == 0.0) break;
      const Complex cand = r - reduced(r) / d;
      const double cand_res = std::abs(reduced(cand));
      if (!(cand_res < res)) break;
      r = cand;
      res = cand_res;
    }
    out.push_back(r);
  }
  return out;
}

double zero_set_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.empty()) return 0.0;
  if (a.size() <= 8) {
    std::vector<size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  // Greedy matching for large sets.
  double worst = 0.0;
  for (const Complex x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [x](Complex l, Complex r) { return std::abs(l - x) < std::abs(r - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

}  // namespace hankel_lab
