#include "spectral_enclose/potential.hpp"

#include <cmath>
#include <cstdio>

#include "spectral_enclose/error.hpp"

namespace spectral {

Potential::Potential(std::vector<double> coefficients, std::optional<double> lower_bound_hint)
    : coefficients_(std::move(coefficients)), lower_bound_hint_(lower_bound_hint) {
  for (double c : coefficients_)
    if (!std::isfinite(c)) throw InvalidArgument("potential coefficients must be finite");
  while (!coefficients_.empty() && coefficients_.back() == 0.0) coefficients_.pop_back();
  if (coefficients_.empty()) coefficients_.push_back(0.0);
}

double Potential::operator()(double x) const noexcept {
  double value = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) value = value * x + *it;
  return value;
}

std::string Potential::describe() const {
  const bool monomial = [&] {
    for (std::size_t k = 0; k + 1 < coefficients_.size(); ++k)
      if (coefficients_[k] != 0.0) return false;
    return coefficients_.back() == 1.0;
  }();
  if (monomial && degree() >= 1) return degree() == 1 ? "x" : "x^" + std::to_string(degree());
  std::string out = "[";
  char buf[32];
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", coefficients_[k]);
    out += (k ? "," : "") + std::string(buf);
  }
  return out + "]";
}

}  // namespace spectral
