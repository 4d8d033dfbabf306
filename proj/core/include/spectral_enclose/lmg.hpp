#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spectral_enclose/assembly.hpp"

namespace spectral {

/// Eigenvalues tau of the pencil tau A2t = A1t, split by sign.
///
/// taus_negative is ordered from the most negative upward, so taus_negative[j-1]
/// is tau_j^- of the min-max characterisation; taus_positive is ordered from the
/// largest downward. Values with |tau| <= tau_tol carry no bound information and
/// are only counted in zero_taus.
struct TauSpectrum {
  double t = 0.0;
  std::vector<double> taus_negative;
  std::vector<double> taus_positive;
  std::size_t zero_taus = 0;
  double tau_tol = 0.0;

  std::size_t m_minus() const noexcept { return taus_negative.size(); }
  std::size_t m_plus() const noexcept { return taus_positive.size(); }
};

/// Throws ShiftInSpectrum when A2t fails its Cholesky factorisation.
TauSpectrum tau_spectrum(const FormMatrices& forms, double t);

/// Same, from an already shifted pair (used by tests on synthetic pencils).
TauSpectrum tau_spectrum(const ShiftedForms& shifted);

/// lower_bounds[j-1] = t + 1/tau_j^- is a lower bound for lambda_{l(t)-j+1};
/// upper_bounds[j-1] = t + 1/tau_j^+ is an upper bound for lambda_{l(t)+j}.
struct BoundSet {
  double t = 0.0;
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;
  std::optional<int> ell_hint;
};

BoundSet bounds_from_tau(const TauSpectrum& spectrum, std::optional<int> ell_hint = std::nullopt);

/// Extremal Galerkin (Ritz) values of (A1, A0) and the two trial-space
/// conditions x < max Ritz value and y > min Ritz value.
struct Admissibility {
  double ritz_min = 0.0;
  double ritz_max = 0.0;
  bool lower_shift_ok = false;  // x < ritz_max
  bool upper_shift_ok = false;  // y > ritz_min

  bool ok() const noexcept { return lower_shift_ok && upper_shift_ok; }
};

Admissibility check_admissibility(const FormMatrices& forms, double x, double y);

/// Same check from precomputed ascending Ritz values.
Admissibility check_admissibility(const std::vector<double>& ritz_values, double x, double y);

/// Smallest `count` eigenvalues of (A1, A0), ascending. These are upper bounds
/// for the eigenvalues of the (truncated) operator.
std::vector<double> galerkin_upper(const FormMatrices& forms, std::size_t count);

struct EnclosureRecord {
  int index = 0;  // 1-based eigenvalue index j
  double lower = 0.0;
  double upper = 0.0;
  double width = 0.0;
  double t_minus = 0.0;
  double t_plus = 0.0;
  std::optional<double> galerkin_upper;
  /// lower > upper; only kept when EncloseOptions::keep_crossed is set.
  bool crossed = false;
};

struct EnclosureReport {
  std::vector<EnclosureRecord> records;
  std::size_t requested = 0;
  bool short_report = false;

  double half_length = 0.0;
  std::size_t elements = 0;
  std::size_t dofs = 0;
  std::string potential;
  double t_minus = 0.0;
  double t_plus = 0.0;

  std::size_t m_plus_at_t_minus = 0;
  std::size_t m_minus_at_t_plus = 0;
  /// l(t+) used to index the lower bounds: ell_hint if given, else m^-(t+).
  std::size_t ell_used = 0;
  std::optional<int> ell_hint;
  bool ell_mismatch = false;

  std::optional<Admissibility> admissibility;
  /// True when t- lies below every Ritz value, i.e. l(t-) = 0 is certain.
  std::optional<bool> t_minus_below_spectrum;
  std::optional<std::string> index_caveat;
};

struct EncloseOptions {
  bool with_galerkin = true;
  /// Runs the two shifted solves on separate threads. Results do not depend on it.
  bool parallel = false;
  /// Record crossed bounds (flagged) instead of throwing InconsistentEnclosure.
  /// Used by studies that probe the round-off floor, where crossing is the signal.
  bool keep_crossed = false;
};

/// Pairs upper bounds from t_minus (below lambda_1) with lower bounds from t_plus.
/// Eigenvalue j gets upper t- + 1/tau_j^+(t-) and lower t+ + 1/tau_{l-j+1}^-(t+),
/// l = ell_hint or m^-(t+). Throws InconsistentEnclosure on crossed bounds.
EnclosureReport enclose(const FormMatrices& forms, double t_minus, double t_plus, std::size_t count,
                        std::optional<int> ell_hint = std::nullopt, const EncloseOptions& options = {});

}  // namespace spectral
