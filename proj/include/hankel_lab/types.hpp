#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hankel_lab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Violated precondition or malformed input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical check failed (residual above tolerance, ill-posed factorization, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which anti-linear Hankel operator a quantity refers to: H_u (matrix Gamma)
/// or K_u = H_u S (shifted matrix).
enum class Which { H, K };

enum class Dominance { H, K };

inline const char* to_string(Which w) { return w == Which::H ? "H" : "K"; }
inline const char* to_string(Dominance d) { return d == Dominance::H ? "H" : "K"; }

/// Knobs shared by the numerical pipeline. Defaults are the documented ones.
struct Tolerances {
  double rel_gap = 1e-6;            // singular value clustering, relative
  double noise_floor = 1e-9;        // relative to the largest singular value
  double subspace_tol = 1e-6;       // eigen-residual of Schmidt basis vectors
  double dominance_tol = 1e-6;      // relative to |u|
  double boundary_band = 1e-4;      // inner/outer root classification
  double division_floor = 1e-10;    // series division leading coefficient
  double reconstruction_tol = 1e-8; // rational reconstruction, relative residual
  double unimodularity_tol = 1e-8;  // | |sample| - 1 |
  double fit_tol = 1e-8;            // inner fit pointwise error
  double residual_tol = 1e-6;       // structural identities (angles, isometry, ...)
  double norm_tol = 1e-5;           // norm identities involving truncated symbols
  double pole_margin = 1e-3;        // RationalFunction analyticity margin
  double rank_tol = 1e-7;           // numerical rank of approximants, relative to |Gamma|
};

}  // namespace hankel_lab
