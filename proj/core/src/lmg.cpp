#include "spectral_enclose/lmg.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "spectral_enclose/eigensolve.hpp"
#include "spectral_enclose/error.hpp"

namespace spectral {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<double> ritz_values(const FormMatrices& forms) {
  return eig_gsym(forms.a1, forms.a0, Vectors::skip).values;
}

}  // namespace

Admissibility check_admissibility(const std::vector<double>& ritz, double x, double y) {
  if (!(x < y)) throw InvalidArgument("admissibility check needs x < y");
  if (ritz.empty()) throw InvalidArgument("admissibility check needs at least one Ritz value");
  Admissibility a;
  a.ritz_min = ritz.front();
  a.ritz_max = ritz.back();
  a.lower_shift_ok = x < a.ritz_max;
  a.upper_shift_ok = y > a.ritz_min;
  return a;
}

TauSpectrum tau_spectrum(const ShiftedForms& shifted) {
  EigenDecomposition decomposition;
  try {
    decomposition = eig_gsym(shifted.a1t, shifted.a2t, Vectors::skip);
  } catch (const NotPositiveDefinite& e) {
    throw ShiftInSpectrum(shifted.t, e.pivot_index());
  }

  TauSpectrum spectrum;
  spectrum.t = shifted.t;
  const double n = static_cast<double>(shifted.a1t.rows());
  spectrum.tau_tol = n * kEps * frobenius_norm(shifted.a1t) / frobenius_norm(shifted.a2t);

  // values are ascending: negatives come out most-negative first already
  for (double tau : decomposition.values) {
    if (std::abs(tau) <= spectrum.tau_tol)
      ++spectrum.zero_taus;
    else if (tau < 0.0)
      spectrum.taus_negative.push_back(tau);
  }
  for (auto it = decomposition.values.rbegin(); it != decomposition.values.rend(); ++it)
    if (*it > spectrum.tau_tol) spectrum.taus_positive.push_back(*it);
  return spectrum;
}

TauSpectrum tau_spectrum(const FormMatrices& forms, double t) { return tau_spectrum(shift(forms, t)); }

BoundSet bounds_from_tau(const TauSpectrum& spectrum, std::optional<int> ell_hint) {
  BoundSet bounds;
  bounds.t = spectrum.t;
  bounds.ell_hint = ell_hint;
  bounds.lower_bounds.reserve(spectrum.m_minus());
  bounds.upper_bounds.reserve(spectrum.m_plus());
  for (double tau : spectrum.taus_negative) bounds.lower_bounds.push_back(spectrum.t + 1.0 / tau);
  for (double tau : spectrum.taus_positive) bounds.upper_bounds.push_back(spectrum.t + 1.0 / tau);
  return bounds;
}

Admissibility check_admissibility(const FormMatrices& forms, double x, double y) {
  if (!(x < y)) throw InvalidArgument("admissibility check needs x < y");
  return check_admissibility(ritz_values(forms), x, y);
}

std::vector<double> galerkin_upper(const FormMatrices& forms, std::size_t count) {
  if (count > forms.size())
    throw InvalidArgument("requested " + std::to_string(count) + " Galerkin values from a trial space of dimension " +
                          std::to_string(forms.size()));
  if (count == 0) return {};
  auto values = ritz_values(forms);
  values.resize(count);
  return values;
}

EnclosureReport enclose(const FormMatrices& forms, double t_minus, double t_plus, std::size_t count,
                        std::optional<int> ell_hint, const EncloseOptions& options) {
  if (!(t_minus < t_plus)) throw InvalidArgument("enclose needs t_minus < t_plus");
  if (ell_hint && *ell_hint < 0) throw InvalidArgument("ell hint must be non-negative");

  EnclosureReport report;
  report.requested = count;
  report.half_length = forms.mesh.half_length();
  report.elements = forms.mesh.elements();
  report.dofs = forms.size();
  report.potential = forms.potential.describe();
  report.t_minus = t_minus;
  report.t_plus = t_plus;
  report.ell_hint = ell_hint;
  if (count == 0) return report;

  TauSpectrum below;
  TauSpectrum above;
  if (options.parallel) {
    auto f_below = std::async(std::launch::async, [&] { return tau_spectrum(forms, t_minus); });
    above = tau_spectrum(forms, t_plus);
    below = f_below.get();
  } else {
    below = tau_spectrum(forms, t_minus);
    above = tau_spectrum(forms, t_plus);
  }
  const BoundSet upper_set = bounds_from_tau(below);
  const BoundSet lower_set = bounds_from_tau(above, ell_hint);

  std::vector<double> ritz;
  if (options.with_galerkin) {
    ritz = ritz_values(forms);
    report.admissibility = check_admissibility(ritz, t_minus, t_plus);
    report.t_minus_below_spectrum = t_minus < ritz.front();
  }

  report.m_plus_at_t_minus = below.m_plus();
  report.m_minus_at_t_plus = above.m_minus();
  report.ell_used = ell_hint ? static_cast<std::size_t>(*ell_hint) : above.m_minus();
  report.ell_mismatch = ell_hint && static_cast<std::size_t>(*ell_hint) != above.m_minus();
  if (!ell_hint) {
    report.index_caveat =
        "lower bounds are indexed assuming l(t+) = m-(t+) = " + std::to_string(above.m_minus()) +
        "; without a priori knowledge of the number of eigenvalues below t+ this indexing is not certified";
  }

  const std::size_t ell = report.ell_used;
  for (std::size_t j = 1; j <= count; ++j) {
    if (j > upper_set.upper_bounds.size()) break;
    // lambda_j is bounded below by tau^-_{l-j+1}
    if (j > ell) break;
    const std::size_t q = ell - j + 1;
    if (q > lower_set.lower_bounds.size()) continue;

    EnclosureRecord record;
    record.index = static_cast<int>(j);
    record.upper = upper_set.upper_bounds[j - 1];
    record.lower = lower_set.lower_bounds[q - 1];
    record.width = record.upper - record.lower;
    record.t_minus = t_minus;
    record.t_plus = t_plus;
    if (j <= ritz.size()) record.galerkin_upper = ritz[j - 1];
    if (record.lower > record.upper) {
      if (!options.keep_crossed) throw InconsistentEnclosure(record.index, record.lower, record.upper);
      record.crossed = true;
    }
    report.records.push_back(record);
  }
  report.short_report = report.records.size() < count;
  return report;
}

}  // namespace spectral
