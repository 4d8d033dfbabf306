#include "spectral_enclose/assembly.hpp"

#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "spectral_enclose/error.hpp"

namespace spectral {

int required_quadrature_degree(const Potential& potential) { return 6 + 2 * potential.degree(); }

FormMatrices assemble(const Potential& potential, const Mesh& mesh) {
  const QuadratureRule rule = gauss_rule(required_quadrature_degree(potential));
  const HermiteElement element(mesh.h());
  const std::size_t n_dofs = dof_count(mesh);
  const double h = mesh.h();

  // Shape values at the quadrature points do not depend on the element.
  const std::size_t n_q = rule.points.size();
  std::vector<std::array<double, 4>> phi(n_q), dphi(n_q), ddphi(n_q);
  for (std::size_t q = 0; q < n_q; ++q) {
    phi[q] = element.eval(rule.points[q], 0);
    dphi[q] = element.eval(rule.points[q], 1);
    ddphi[q] = element.eval(rule.points[q], 2);
  }

  FormMatrices forms{Matrix(n_dofs, n_dofs), Matrix(n_dofs, n_dofs), Matrix(n_dofs, n_dofs), mesh, potential};

  for (std::size_t e = 0; e < mesh.elements(); ++e) {
    double m0[4][4] = {};
    double m1[4][4] = {};
    double m2[4][4] = {};
    const double x_left = mesh.left_node(e);
    for (std::size_t q = 0; q < n_q; ++q) {
      const double w = rule.weights[q] * h;
      const double v = potential(x_left + rule.points[q] * h);
      const auto& f = phi[q];
      const auto& df = dphi[q];
      const auto& ddf = ddphi[q];
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const double uv = f[a] * f[b];
          m0[a][b] += w * uv;
          m1[a][b] += w * (df[a] * df[b] + v * uv);
          m2[a][b] += w * (ddf[a] * ddf[b] - v * (ddf[a] * f[b] + f[a] * ddf[b]) + v * v * uv);
        }
      }
    }

    const auto dofs = element_dofs(mesh, e);
    for (int a = 0; a < 4; ++a) {
      if (dofs[a] == kDroppedDof) continue;
      const auto i = static_cast<std::size_t>(dofs[a]);
      for (int b = 0; b < 4; ++b) {
        if (dofs[b] == kDroppedDof) continue;
        const auto j = static_cast<std::size_t>(dofs[b]);
        forms.a0(i, j) += m0[a][b];
        forms.a1(i, j) += m1[a][b];
        forms.a2(i, j) += m2[a][b];
      }
    }
  }

  symmetrize(forms.a0);
  symmetrize(forms.a1);
  symmetrize(forms.a2);
  return forms;
}

ShiftedForms shift(const FormMatrices& forms, double t) {
  const std::size_t n = forms.size();
  ShiftedForms shifted{t, Matrix(n, n), Matrix(n, n)};
  const auto a0 = forms.a0.data();
  const auto a1 = forms.a1.data();
  const auto a2 = forms.a2.data();
  auto a1t = shifted.a1t.data();
  auto a2t = shifted.a2t.data();
  const double t2 = t * t;
  for (std::size_t k = 0; k < a0.size(); ++k) {
    a1t[k] = a1[k] - t * a0[k];
    a2t[k] = a2[k] - 2.0 * t * a1[k] + t2 * a0[k];
  }
  // entrywise arithmetic on symmetric inputs is already exactly symmetric
  return shifted;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  std::size_t nnz = 0;
  for (double x : m.data())
    if (x != 0.0) ++nnz;
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  char buf[64];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << i + 1 << ' ' << j + 1 << ' ' << buf << '\n';
    }
  }
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("matrix dump: missing header");
  std::istringstream header(line);
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(header >> rows >> cols >> nnz)) throw InvalidArgument("matrix dump: malformed header");
  Matrix m(rows, cols);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t i = 0, j = 0;
    double value = 0.0;
    if (!(in >> i >> j >> value) || i == 0 || j == 0 || i > rows || j > cols)
      throw InvalidArgument("matrix dump: malformed entry " + std::to_string(k + 1));
    m(i - 1, j - 1) = value;
  }
  return m;
}

}  // namespace spectral
