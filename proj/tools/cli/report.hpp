#pragma once

#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "json.hpp"
#include "spectral_enclose/lmg.hpp"
#include "spectral_enclose/studies.hpp"

namespace spectral::cli {

/// 17 significant digits, enough to round-trip every double.
std::string format_real(double value);

/// Run metadata copied into JSON reports. elapsed_seconds is left out in deterministic mode.
struct RunMeta {
  const RunConfig& config;
  std::optional<double> elapsed_seconds;
};

nlohmann::json config_json(const RunConfig& config);

void write_enclose(std::ostream& out, const EnclosureReport& report, const RunMeta& meta);
void write_mesh_sweep(std::ostream& out, const ConvergenceStudy& study, const RunMeta& meta);
void write_shift_sweep(std::ostream& out, const std::vector<ShiftSweepRow>& rows, const RunMeta& meta);
void write_galerkin_compare(std::ostream& out, const std::vector<GalerkinCompareRow>& rows, const RunMeta& meta);
void write_truncation_probe(std::ostream& out, const TruncationProbe& probe, const RunMeta& meta);

/// {"error": kind, "message": ..., "exit_code": ...} plus kind-specific fields.
nlohmann::json error_json(const std::exception& error, int exit_code);

}  // namespace spectral::cli
