#include "spectral_enclose/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spectral_enclose/error.hpp"

namespace spectral {

Mesh::Mesh(double half_length, std::size_t elements)
    : half_length_(half_length),
      elements_(elements),
      h_(2.0 * half_length / static_cast<double>(elements)),
      nodes_(elements + 1) {
  const double width = 2.0 * half_length;
  const double n = static_cast<double>(elements);
  for (std::size_t l = 0; l <= elements; ++l)
    nodes_[l] = -half_length + width * static_cast<double>(l) / n;
  nodes_.front() = -half_length;
  nodes_.back() = half_length;
}

Mesh make_mesh(double half_length, std::size_t elements) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw InvalidArgument("mesh half-length L must be positive and finite");
  if (elements < 2) throw InvalidArgument("mesh needs at least 2 elements, got " + std::to_string(elements));
  return Mesh(half_length, elements);
}

namespace {

struct LegendreValue {
  double value;
  double derivative;
};

LegendreValue legendre(int m, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= m; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, m * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_rule(int exact_degree) {
  if (exact_degree < 0) throw InvalidArgument("quadrature degree must be non-negative");
  if (exact_degree > kMaxQuadratureDegree) throw UnsupportedDegree(exact_degree, kMaxQuadratureDegree);

  const int m = (exact_degree + 2) / 2;
  QuadratureRule rule;
  rule.exact_degree = exact_degree;
  rule.points.resize(m);
  rule.weights.resize(m);

  // Newton iteration for the roots of P_m on [-1, 1], mapped to [0, 1].
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(m, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double dp = legendre(m, x).derivative;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    rule.points[i] = 0.5 * (1.0 - x);
    rule.points[m - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[m - 1 - i] = 0.5 * w;
  }
  if (m % 2 == 1) rule.points[m / 2] = 0.5;
  return rule;
}

HermiteElement::HermiteElement(double h) : h_(h) {
  if (!(h > 0.0)) throw InvalidArgument("Hermite element width must be positive");
}

std::array<double, 4> HermiteElement::eval(double s, int derivative_order) const {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("reference coordinate must lie in [0, 1]");
  const double s2 = s * s;
  const double s3 = s2 * s;
  switch (derivative_order) {
    case 0:
      return {1.0 - 3.0 * s2 + 2.0 * s3, h_ * (s - 2.0 * s2 + s3), 3.0 * s2 - 2.0 * s3,
              h_ * (s3 - s2)};
    case 1: {
      const double inv_h = 1.0 / h_;
      return {(-6.0 * s + 6.0 * s2) * inv_h, 1.0 - 4.0 * s + 3.0 * s2, (6.0 * s - 6.0 * s2) * inv_h,
              3.0 * s2 - 2.0 * s};
    }
    case 2: {
      const double inv_h = 1.0 / h_;
      const double inv_h2 = inv_h * inv_h;
      return {(-6.0 + 12.0 * s) * inv_h2, (-4.0 + 6.0 * s) * inv_h, (6.0 - 12.0 * s) * inv_h2,
              (6.0 * s - 2.0) * inv_h};
    }
    default:
      throw InvalidArgument("derivative order must be 0, 1 or 2, got " + std::to_string(derivative_order));
  }
}

std::array<double, 4> eval_basis(const HermiteElement& element, double s, int derivative_order) {
  return element.eval(s, derivative_order);
}

std::size_t dof_count(const Mesh& mesh) { return 2 * mesh.elements(); }

namespace {

// node 0: slope -> 0; interior node l: value -> 2l-1, slope -> 2l; node n: slope -> 2n-1
std::ptrdiff_t value_dof(std::size_t node, std::size_t n) {
  if (node == 0 || node == n) return kDroppedDof;
  return static_cast<std::ptrdiff_t>(2 * node) - 1;
}

std::ptrdiff_t slope_dof(std::size_t node, std::size_t n) {
  return node == n ? static_cast<std::ptrdiff_t>(2 * n) - 1 : static_cast<std::ptrdiff_t>(2 * node);
}

}  // namespace

std::array<std::ptrdiff_t, 4> element_dofs(const Mesh& mesh, std::size_t element) {
  const std::size_t n = mesh.elements();
  if (element >= n) throw InvalidArgument("element index out of range");
  return {value_dof(element, n), slope_dof(element, n), value_dof(element + 1, n), slope_dof(element + 1, n)};
}

double eval_trial_function(const Mesh& mesh, std::span<const double> coeffs, std::size_t element,
                           double s, int derivative_order) {
  if (coeffs.size() != dof_count(mesh)) throw InvalidArgument("coefficient vector has wrong length");
  const auto basis = HermiteElement(mesh.h()).eval(s, derivative_order);
  const auto dofs = element_dofs(mesh, element);
  double value = 0.0;
  for (int a = 0; a < 4; ++a)
    if (dofs[a] != kDroppedDof) value += coeffs[static_cast<std::size_t>(dofs[a])] * basis[a];
  return value;
}

}  // namespace spectral
