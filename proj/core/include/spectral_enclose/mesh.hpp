#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace spectral {

/// Uniform partition of [-L, L] into n elements of width h = 2L/n.
class Mesh {
 public:
  double half_length() const noexcept { return half_length_; }
  std::size_t elements() const noexcept { return elements_; }
  double h() const noexcept { return h_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double left_node(std::size_t element) const { return nodes_.at(element); }

 private:
  friend Mesh make_mesh(double half_length, std::size_t elements);
  Mesh(double half_length, std::size_t elements);

  double half_length_;
  std::size_t elements_;
  double h_;
  std::vector<double> nodes_;
};

/// Throws InvalidArgument unless L > 0 (finite) and n >= 2.
Mesh make_mesh(double half_length, std::size_t elements);

/// Gauss-Legendre rule on the reference interval [0, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exact_degree = 0;
};

inline constexpr int kMaxQuadratureDegree = 30;

/// Rule with ceil((exact_degree + 1) / 2) points. Degrees above kMaxQuadratureDegree
/// raise UnsupportedDegree.
QuadratureRule gauss_rule(int exact_degree);

/// Cubic Hermite element of width h on the reference coordinate s in [0, 1]:
///   H1 = 1 - 3s^2 + 2s^3      (value at the left node)
///   H2 = h (s - 2s^2 + s^3)   (slope at the left node)
///   H3 = 3s^2 - 2s^3          (value at the right node)
///   H4 = h (-s^2 + s^3)       (slope at the right node)
/// Derivatives are returned in physical coordinates (one factor 1/h per order).
class HermiteElement {
 public:
  explicit HermiteElement(double h);
  double h() const noexcept { return h_; }

  /// derivative_order in {0, 1, 2}; s must lie in [0, 1].
  std::array<double, 4> eval(double s, int derivative_order) const;

 private:
  double h_;
};

std::array<double, 4> eval_basis(const HermiteElement& element, double s, int derivative_order);

/// Global C1 Hermite space with homogeneous Dirichlet conditions. Every node
/// carries a slope DOF; interior nodes also carry a value DOF, while the value
/// DOFs at x = +-L are dropped. DOFs are numbered node by node (value before
/// slope), so the dimension is 2n and couplings stay within bandwidth 3.
std::size_t dof_count(const Mesh& mesh);

inline constexpr std::ptrdiff_t kDroppedDof = -1;

/// Global indices of the local DOFs (H1..H4) of an element, kDroppedDof for the
/// boundary value DOFs.
std::array<std::ptrdiff_t, 4> element_dofs(const Mesh& mesh, std::size_t element);

/// Evaluates the global trial function with coefficient vector `coeffs` (length
/// dof_count) on `element` at reference coordinate s. Evaluating at s = 1 of element
/// l and s = 0 of element l + 1 gives the left and right limits at node l + 1.
double eval_trial_function(const Mesh& mesh, std::span<const double> coeffs, std::size_t element,
                           double s, int derivative_order);

}  // namespace spectral
