#pragma once

#include "hankel_lab/types.hpp"

namespace hankel_lab {

/// Orthonormal basis of the column span, dropping directions whose singular
/// value is below rel_tol times the largest one.
CMatrix orthonormal_basis(const CMatrix& a, double rel_tol = 1e-12);

/// Largest principal angle between two subspaces given by orthonormal bases.
/// Returns pi/2 when the dimensions differ.
double max_principal_angle(const CMatrix& a, const CMatrix& b);

/// span(v) intersected with x^perp, for orthonormal v.
CMatrix intersect_orthogonal(const CMatrix& v, const CVector& x);

/// Orthonormal basis of the orthogonal complement of span(a) in C^n.
CMatrix orthogonal_complement(const CMatrix& a);

double spectral_norm(const CMatrix& m);

/// Number of singular values above tol * reference (reference defaults to the largest).
int numerical_rank(const CMatrix& m, double tol, double reference = -1.0);

}  // namespace hankel_lab
