#pragma once

#include <vector>

#include "spectral_enclose/matrix.hpp"

namespace spectral {

enum class Vectors { compute, skip };

/// Eigenpairs in ascending order. Column k of `vectors` pairs with values[k];
/// `vectors` is empty when the decomposition was computed with Vectors::skip.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
  /// True when the vectors are orthonormal in the B inner product of a pencil (M, B).
  bool b_orthonormal = false;

  bool has_vectors() const noexcept { return vectors.rows() != 0; }
};

/// Lower-triangular L with L L^T = B. A pivot <= N * eps * max_i B(i,i) raises
/// NotPositiveDefinite carrying the 0-based pivot index. Only the lower triangle
/// of B is read; the leading zeros of each row (the envelope) are skipped.
Matrix cholesky(const Matrix& b);

/// Full symmetric eigendecomposition: Householder reduction to tridiagonal form,
/// then implicit-shift QL. Raises ConvergenceFailure after 30 N QL sweeps.
EigenDecomposition eig_sym(const Matrix& m, Vectors vectors = Vectors::compute);

/// Symmetric-definite pencil M v = theta B v via C = L^{-1} M L^{-T}, B = L L^T.
/// Eigenvectors are back-transformed and B-orthonormal.
EigenDecomposition eig_gsym(const Matrix& m, const Matrix& b, Vectors vectors = Vectors::compute);

}  // namespace spectral
