#pragma once

// Test-side reference computations, written independently of the library
// code paths they check (direct formulas, dense linear algebra).

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;

// Taylor coefficients of num/den by long division, den[0] != 0.
inline std::vector<C> taylor(const std::vector<C>& num, const std::vector<C>& den, int n) {
  std::vector<C> out(static_cast<size_t>(n), C{});
  for (int k = 0; k < n; ++k) {
    C acc = k < static_cast<int>(num.size()) ? num[static_cast<size_t>(k)] : C{};
    for (int j = 1; j < static_cast<int>(den.size()) && j <= k; ++j)
      acc -= den[static_cast<size_t>(j)] * out[static_cast<size_t>(k - j)];
    out[static_cast<size_t>(k)] = acc / den[0];
  }
  return out;
}

inline Eigen::MatrixXcd hankel(const std::vector<C>& g, int n, int offset = 0) {
  Eigen::MatrixXcd h(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const size_t i = static_cast<size_t>(j + k + offset);
      h(j, k) = i < g.size() ? g[i] : C{};
    }
  return h;
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
}

// Numerical multiplicity of value s among the singular values.
inline int count_near(const Eigen::VectorXd& sv, double s, double tol) {
  int c = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (std::abs(sv(i) - s) <= tol) ++c;
  return c;
}

// Blaschke factor (a - z)/(1 - conj(a) z) evaluated directly.
inline C factor(C a, C z) { return (a - z) / (1.0 - std::conj(a) * z); }

}  // namespace oracle
