#pragma once

#include <vector>

#include "weylcover/matrix.hpp"

namespace weylcover {

// Gauss-Jordan inverse with partial pivoting; throws NotGroupElement when the
// pivot collapses. Field-preserving.
DenseMatrix inverse(const DenseMatrix& a);

Cplx determinant(const DenseMatrix& a);

// Singular values of a real matrix, descending (one-sided Jacobi).
std::vector<double> singular_values(const std::vector<std::vector<double>>& columns);

// Count of singular values above rtol * sigma_max.
int numerical_rank(const std::vector<std::vector<double>>& columns, double rtol);

// |det| of a square real matrix given as a list of columns (LU, partial pivot).
double abs_determinant(const std::vector<std::vector<double>>& columns);

// Matrix exponential by scaling-and-squaring with a Taylor series; exact
// enough for the small, moderate-norm inputs used here.
DenseMatrix matrix_exp(const DenseMatrix& a);

// Modified Gram-Schmidt with one re-orthogonalization pass; returns Q with
// orthonormal columns and the R factor's diagonal left implicitly positive.
DenseMatrix gram_schmidt_q(const DenseMatrix& a);

}  // namespace weylcover
