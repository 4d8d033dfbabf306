#pragma once

#include <cstddef>
#include <iosfwd>

#include "spectral_enclose/matrix.hpp"
#include "spectral_enclose/mesh.hpp"
#include "spectral_enclose/potential.hpp"

namespace spectral {

/// Gram matrices of the Schroedinger operator A = -d^2/dx^2 + V over the global
/// Hermite basis {b_j}:
///   a0 = [<b_j, b_k>],  a1 = [<A b_j, b_k>],  a2 = [<A b_j, A b_k>].
struct FormMatrices {
  Matrix a0;
  Matrix a1;
  Matrix a2;
  Mesh mesh;
  Potential potential;

  std::size_t size() const noexcept { return a0.rows(); }
};

/// Quadrature exactness needed for V^2 u v with cubic u, v.
int required_quadrature_degree(const Potential& potential);

/// Element-by-element assembly with Gauss-Legendre quadrature exact for every
/// integrand. a1 uses the weak form int u'v' + V u v; a2 expands
/// int (-u'' + V u)(-v'' + V v). Element contributions are summed left to right.
FormMatrices assemble(const Potential& potential, const Mesh& mesh);

/// a1t = a1 - t a0 and a2t = a2 - 2t a1 + t^2 a0, the Gram forms of A - t.
struct ShiftedForms {
  double t = 0.0;
  Matrix a1t;
  Matrix a2t;
};

ShiftedForms shift(const FormMatrices& forms, double t);

/// Plain-text sparse dump: a header line "N N nnz", then one "row col value"
/// triplet per nonzero (1-based, row-major, 17 significant digits).
void write_matrix(std::ostream& out, const Matrix& m);
Matrix read_matrix(std::istream& in);

}  // namespace spectral
