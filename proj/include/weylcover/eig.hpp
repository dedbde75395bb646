#pragma once

#include <vector>

#include "weylcover/config.hpp"
#include "weylcover/matrix.hpp"

namespace weylcover {

// Sorted spectral data plus the diagonalizing frame. `values` holds
// eigenvalues (descending) for self-adjoint input or phases in [0, 2pi)
// (ascending) for unitary input. Column sign/phase is canonical: the
// largest-magnitude entry of each eigenvector is real and positive, ties
// broken by lowest row index.
struct EigenDecomposition {
  std::vector<double> values;
  DenseMatrix frame;
  double residual = 0.0;
};

EigenDecomposition eig_self_adjoint(const DenseMatrix& a,
                                    const Tolerances& tols = default_tolerances());

EigenDecomposition eig_unitary(const DenseMatrix& u,
                               const Tolerances& tols = default_tolerances());

enum class ChartDirection { log, exp };

// Spectral functional calculus between Sym+ and Sym: log of an SPD matrix,
// exp of a symmetric one.
DenseMatrix spd_chart(const DenseMatrix& a, ChartDirection direction,
                      const Tolerances& tols = default_tolerances());

// F diag(values) F^H (self-adjoint convention).
DenseMatrix reconstruct_self_adjoint(const EigenDecomposition& d);
// F diag(e^{i theta}) F^H (unitary convention).
DenseMatrix reconstruct_unitary(const EigenDecomposition& d);

}  // namespace weylcover
