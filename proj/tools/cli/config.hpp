#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spectral_enclose/potential.hpp"
#include "spectral_enclose/studies.hpp"

namespace spectral::cli {

enum class Command { enclose, mesh_sweep, shift_sweep, galerkin_compare, truncation_probe, dump_matrices };
enum class Format { csv, json };

const char* to_string(Command command) noexcept;
const char* to_string(Format format) noexcept;

/// Fully resolved run configuration. The JSON config file uses the same names:
/// potential, L, n, t_minus, t_plus, eigen_count, ell_hint, output, format,
/// deterministic, jobs, slope_window.
struct RunConfig {
  Command command = Command::enclose;
  Potential potential = Potential::harmonic();
  double half_length = 6.0;
  std::vector<std::size_t> meshes;
  std::vector<double> t_minus;
  std::vector<double> t_plus;
  std::size_t eigen_count = 5;
  std::optional<int> ell_hint;
  std::optional<std::string> output;
  Format format = Format::csv;
  bool deterministic = false;
  std::size_t jobs = 1;
  std::optional<std::pair<std::size_t, std::size_t>> slope_window;
};

/// Per-command defaults reproduce the reference experiments on L = 6.
RunConfig defaults_for(Command command);

/// "harmonic", "anharmonic", "zero", or comma-separated coefficients in ascending powers.
Potential parse_potential(const std::string& text);

std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);
Format parse_format(const std::string& text);
std::size_t parse_jobs(const std::string& text);

/// Overrides fields present in a flat JSON object. Unknown keys are rejected.
void apply_json(RunConfig& config, const nlohmann::json& object);

/// Throws InvalidArgument when the config does not fit its command.
void validate(const RunConfig& config);

StudyProblem problem_from(const RunConfig& config);

}  // namespace spectral::cli
