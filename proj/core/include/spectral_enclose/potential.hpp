#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spectral {

/// Polynomial potential V(x) = sum_k c_k x^k, coefficients in ascending powers.
class Potential {
 public:
  /// Trailing zero coefficients are trimmed; an empty list is the zero potential.
  explicit Potential(std::vector<double> coefficients, std::optional<double> lower_bound_hint = std::nullopt);

  static Potential harmonic() { return Potential({0.0, 0.0, 1.0}, 0.0); }
  static Potential anharmonic() { return Potential({0.0, 0.0, 0.0, 0.0, 1.0}, 0.0); }
  static Potential zero() { return Potential({}, 0.0); }

  double operator()(double x) const noexcept;
  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }
  std::optional<double> lower_bound_hint() const noexcept { return lower_bound_hint_; }

  /// "x^2", "x^4", or the coefficient list for anything else.
  std::string describe() const;

 private:
  std::vector<double> coefficients_;
  std::optional<double> lower_bound_hint_;
};

}  // namespace spectral
