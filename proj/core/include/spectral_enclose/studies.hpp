#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectral_enclose/lmg.hpp"

namespace spectral {

/// Order of the enclosure width in h for C1 cubic Hermite elements, 2(r - 1) with r = 3.
inline constexpr double kTheoreticalOrder = 4.0;

/// Widths below this fraction of |lambda| are treated as sitting on the round-off floor.
inline constexpr double kRoundoffFloorFraction = 1e-12;

/// Problem shared by all studies.
struct StudyProblem {
  Potential potential = Potential::harmonic();
  double half_length = 6.0;
  double t_minus = -20.0;
  double t_plus = 20.0;
  std::size_t count = 5;
  std::optional<int> ell_hint;
};

/// jobs == 1 runs every point on the calling thread in parameter order.
struct StudySettings {
  std::size_t jobs = 1;
};

/// One (mesh, eigenvalue index) point.
struct ConvergenceRow {
  std::size_t n = 0;
  double h = 0.0;
  int index = 0;
  double lower = 0.0;
  double upper = 0.0;
  double width = 0.0;
  bool crossed = false;
};

/// A mesh (or shift) point whose run failed as a whole.
struct RunFailure {
  std::size_t n = 0;
  std::string kind;
  std::string message;
};

enum class SlopeStatus { ok, too_few_points, flat };
const char* to_string(SlopeStatus status) noexcept;

/// Convergence order -d log(width) / d log(n), fitted by least squares.
struct SlopeFit {
  int index = 0;
  std::optional<double> order;
  std::size_t points_used = 0;
  SlopeStatus status = SlopeStatus::too_few_points;
};

/// Fits over rows with width >= kRoundoffFloorFraction * |lambda| (lambda taken as
/// the enclosure midpoint) and not crossed. Needs at least 4 such points; when
/// 4 or more rows exist but too few survive the floor filter the fit is "flat".
SlopeFit fit_convergence_order(int index, std::span<const ConvergenceRow> rows);

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  std::vector<RunFailure> failures;
  std::vector<SlopeFit> slopes;
  std::pair<std::size_t, std::size_t> slope_window{0, 0};
};

/// Enclosures for every n in `meshes` (strictly increasing, at least 4) and a fitted
/// order per index over the meshes inside `window` (inclusive; all meshes if unset).
ConvergenceStudy mesh_sweep(const StudyProblem& problem, std::span<const std::size_t> meshes,
                            std::optional<std::pair<std::size_t, std::size_t>> window = std::nullopt,
                            const StudySettings& settings = {});

struct ShiftPair {
  double t_minus = 0.0;
  double t_plus = 0.0;
};

enum class Verdict { not_applicable, monotone, violated };
const char* to_string(Verdict verdict) noexcept;

struct ShiftSweepRow {
  double t_minus = 0.0;
  double t_plus = 0.0;
  int index = 0;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<double> width;
  /// Both trial-space conditions hold and t_minus lies below every Ritz value.
  bool admissible = false;
  std::string status;  // "ok", "inadmissible", "short", or an error kind
  Verdict verdict = Verdict::not_applicable;
};

/// Slack for the monotonicity verdict, absorbing round-off.
inline constexpr double kMonotoneSlack = 1e-13;

/// One enclosure per shift pair on a single mesh. The ladder must move away from
/// the spectrum: t_plus strictly increasing and t_minus strictly decreasing. Each
/// row's verdict compares it with the previous pair for the same index: lower
/// bounds non-decreasing, upper bounds and widths non-increasing.
std::vector<ShiftSweepRow> shift_sweep(const StudyProblem& problem, std::size_t mesh_n,
                                       std::span<const ShiftPair> ladder, const StudySettings& settings = {});

struct GalerkinCompareRow {
  double t_minus = 0.0;
  int index = 0;
  std::optional<double> lmg_upper;
  double galerkin_upper = 0.0;
  std::optional<double> gap;
  std::string status;  // "ok", "inadmissible", "short", or an error kind
  Verdict verdict = Verdict::not_applicable;
};

/// Upper bounds t- + 1/tau_j^+(t-) against Galerkin values along a strictly
/// decreasing t- ladder. A row is monotone when its gap is positive and strictly
/// below the previous row's gap for the same index.
std::vector<GalerkinCompareRow> galerkin_compare(const StudyProblem& problem, std::size_t mesh_n,
                                                 std::span<const double> t_minus_ladder,
                                                 const StudySettings& settings = {});

struct TruncationRow {
  ConvergenceRow point;
  /// log(w_prev / w) / log(n / n_prev) against the previous mesh for this index.
  std::optional<double> local_order;
};

/// Per-index round-off floor. The floor is reached at the first mesh whose
/// enclosure crossed, failed, or whose local order fell below half of
/// kTheoreticalOrder; critical_n is the mesh just before it.
struct FloorVerdict {
  int index = 0;
  std::optional<std::size_t> critical_n;
  std::optional<std::size_t> stalled_at;
  bool floor_detected() const noexcept { return stalled_at.has_value(); }
};

struct TruncationProbe {
  std::vector<TruncationRow> rows;
  std::vector<RunFailure> failures;
  std::vector<FloorVerdict> floors;
};

TruncationProbe truncation_probe(const StudyProblem& problem, std::span<const std::size_t> meshes,
                                 const StudySettings& settings = {});

/// Floor detection for one index. `rows` holds that index's rows; any mesh in
/// `meshes` (increasing) without a row counts as a failed point.
FloorVerdict detect_floor(int index, std::span<const TruncationRow> rows, std::span<const std::size_t> meshes);

/// Runs job(0..count-1) on up to `jobs` threads. Exceptions escape from the first failing job.
void run_jobs(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& job);

}  // namespace spectral
