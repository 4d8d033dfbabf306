#include "spectral_enclose/error.hpp"

#include <cstdio>

namespace spectral {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::unsupported_degree: return "unsupported-degree";
    case ErrorKind::not_positive_definite: return "not-positive-definite";
    case ErrorKind::convergence_failure: return "convergence-failure";
    case ErrorKind::shift_in_spectrum: return "shift-in-spectrum";
    case ErrorKind::inconsistent_enclosure: return "inconsistent-enclosure";
  }
  return "unknown";
}

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

UnsupportedDegree::UnsupportedDegree(int requested, int supported)
    : Error(ErrorKind::unsupported_degree,
            "quadrature exactness degree " + std::to_string(requested) +
                " exceeds the supported maximum " + std::to_string(supported)),
      requested_(requested) {}

NotPositiveDefinite::NotPositiveDefinite(std::size_t pivot_index, double pivot)
    : Error(ErrorKind::not_positive_definite,
            "matrix is not positive definite: pivot " + std::to_string(pivot_index) + " is " +
                format_double(pivot)),
      pivot_index_(pivot_index),
      pivot_(pivot) {}

ShiftInSpectrum::ShiftInSpectrum(double shift, std::size_t pivot_index)
    : Error(ErrorKind::shift_in_spectrum,
            "shift t=" + format_double(shift) +
                " is numerically in the spectrum seen by the trial space (A2t pivot " +
                std::to_string(pivot_index) + " not positive)"),
      shift_(shift) {}

InconsistentEnclosure::InconsistentEnclosure(int index, double lower, double upper)
    : Error(ErrorKind::inconsistent_enclosure,
            "crossed bounds for eigenvalue " + std::to_string(index) + ": lower " +
                format_double(lower) + " > upper " + format_double(upper) +
                " (check shift placement against the true eigenvalue count)"),
      index_(index) {}

}  // namespace spectral
