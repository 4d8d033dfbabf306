#include "spectral_enclose/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "spectral_enclose/error.hpp"

namespace spectral {

const char* to_string(SlopeStatus status) noexcept {
  switch (status) {
    case SlopeStatus::ok: return "ok";
    case SlopeStatus::too_few_points: return "too-few-points";
    case SlopeStatus::flat: return "flat";
  }
  return "unknown";
}

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::not_applicable: return "n/a";
    case Verdict::monotone: return "monotone";
    case Verdict::violated: return "violated";
  }
  return "unknown";
}

void run_jobs(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& job) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  const std::size_t workers = std::min(jobs, count);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

void require_strictly_increasing(std::span<const std::size_t> meshes, const char* what) {
  for (std::size_t i = 1; i < meshes.size(); ++i)
    if (meshes[i] <= meshes[i - 1]) throw InvalidArgument(std::string(what) + ": mesh list must be strictly increasing");
}

RunFailure failure_from(std::size_t n, const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return {n, to_string(err->kind()), err->what()};
  return {n, "error", e.what()};
}

struct MeshPoint {
  std::vector<ConvergenceRow> rows;
  std::optional<RunFailure> failure;
};

std::vector<MeshPoint> run_meshes(const StudyProblem& problem, std::span<const std::size_t> meshes,
                                  const StudySettings& settings, bool keep_crossed) {
  std::vector<MeshPoint> points(meshes.size());
  run_jobs(meshes.size(), settings.jobs, [&](std::size_t k) {
    const std::size_t n = meshes[k];
    try {
      const Mesh mesh = make_mesh(problem.half_length, n);
      const FormMatrices forms = assemble(problem.potential, mesh);
      EncloseOptions options;
      options.with_galerkin = false;
      options.keep_crossed = keep_crossed;
      const EnclosureReport report =
          enclose(forms, problem.t_minus, problem.t_plus, problem.count, problem.ell_hint, options);
      for (const auto& r : report.records)
        points[k].rows.push_back({n, mesh.h(), r.index, r.lower, r.upper, r.width, r.crossed});
    } catch (const InvalidArgument&) {
      throw;
    } catch (const std::exception& e) {
      points[k].failure = failure_from(n, e);
    }
  });
  return points;
}

}  // namespace

SlopeFit fit_convergence_order(int index, std::span<const ConvergenceRow> rows) {
  SlopeFit fit;
  fit.index = index;
  std::vector<double> xs, ys;
  std::size_t candidates = 0;
  for (const auto& row : rows) {
    if (row.index != index || row.crossed || row.width < 0.0) continue;
    ++candidates;
    const double lambda = 0.5 * (row.lower + row.upper);
    if (!(row.width > 0.0) || row.width < kRoundoffFloorFraction * std::abs(lambda)) continue;
    xs.push_back(std::log(static_cast<double>(row.n)));
    ys.push_back(std::log(row.width));
  }
  fit.points_used = xs.size();
  if (xs.size() < 4) {
    fit.status = candidates >= 4 ? SlopeStatus::flat : SlopeStatus::too_few_points;
    return fit;
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) {
    fit.status = SlopeStatus::too_few_points;
    return fit;
  }
  fit.order = -sxy / sxx;
  fit.status = SlopeStatus::ok;
  return fit;
}

ConvergenceStudy mesh_sweep(const StudyProblem& problem, std::span<const std::size_t> meshes,
                            std::optional<std::pair<std::size_t, std::size_t>> window,
                            const StudySettings& settings) {
  if (meshes.size() < 4) throw InvalidArgument("mesh sweep needs at least 4 mesh sizes");
  require_strictly_increasing(meshes, "mesh sweep");
  if (window && window->first > window->second) throw InvalidArgument("slope window must satisfy min <= max");

  ConvergenceStudy study;
  study.slope_window = window.value_or(std::pair{meshes.front(), meshes.back()});
  for (auto& point : run_meshes(problem, meshes, settings, false)) {
    if (point.failure) study.failures.push_back(*point.failure);
    study.rows.insert(study.rows.end(), point.rows.begin(), point.rows.end());
  }

  std::vector<ConvergenceRow> in_window;
  for (const auto& row : study.rows)
    if (row.n >= study.slope_window.first && row.n <= study.slope_window.second) in_window.push_back(row);
  for (std::size_t j = 1; j <= problem.count; ++j)
    study.slopes.push_back(fit_convergence_order(static_cast<int>(j), in_window));
  return study;
}

std::vector<ShiftSweepRow> shift_sweep(const StudyProblem& problem, std::size_t mesh_n,
                                       std::span<const ShiftPair> ladder, const StudySettings& settings) {
  if (ladder.empty()) throw InvalidArgument("shift sweep needs at least one shift pair");
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (!(ladder[k].t_minus < ladder[k].t_plus)) throw InvalidArgument("shift sweep: every pair needs t_minus < t_plus");
    if (k > 0 && !(ladder[k].t_plus > ladder[k - 1].t_plus && ladder[k].t_minus < ladder[k - 1].t_minus))
      throw InvalidArgument("shift sweep: ladder must move away from the spectrum (t_plus increasing, t_minus decreasing)");
  }

  const FormMatrices forms = assemble(problem.potential, make_mesh(problem.half_length, mesh_n));
  const std::vector<double> ritz = galerkin_upper(forms, forms.size());

  const std::size_t count = problem.count;
  std::vector<ShiftSweepRow> rows(ladder.size() * count);
  run_jobs(ladder.size(), settings.jobs, [&](std::size_t k) {
    const ShiftPair pair = ladder[k];
    const Admissibility adm = check_admissibility(ritz, pair.t_minus, pair.t_plus);
    const bool admissible = adm.ok() && pair.t_minus < adm.ritz_min;
    for (std::size_t j = 0; j < count; ++j) {
      auto& row = rows[k * count + j];
      row.t_minus = pair.t_minus;
      row.t_plus = pair.t_plus;
      row.index = static_cast<int>(j + 1);
      row.admissible = admissible;
      row.status = admissible ? "short" : "inadmissible";
    }
    try {
      EncloseOptions options;
      options.with_galerkin = false;
      const EnclosureReport report = enclose(forms, pair.t_minus, pair.t_plus, count, problem.ell_hint, options);
      for (const auto& r : report.records) {
        auto& row = rows[k * count + static_cast<std::size_t>(r.index - 1)];
        row.lower = r.lower;
        row.upper = r.upper;
        row.width = r.width;
        if (admissible) row.status = "ok";
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::invalid_argument) throw;
      for (std::size_t j = 0; j < count; ++j) rows[k * count + j].status = to_string(e.kind());
    }
  });

  for (std::size_t k = 1; k < ladder.size(); ++k) {
    for (std::size_t j = 0; j < count; ++j) {
      auto& row = rows[k * count + j];
      const auto& prev = rows[(k - 1) * count + j];
      if (!row.width || !prev.width || !row.admissible || !prev.admissible) continue;
      const bool ok = *row.lower >= *prev.lower - kMonotoneSlack && *row.upper <= *prev.upper + kMonotoneSlack &&
                      *row.width <= *prev.width + kMonotoneSlack;
      row.verdict = ok ? Verdict::monotone : Verdict::violated;
    }
  }
  return rows;
}

std::vector<GalerkinCompareRow> galerkin_compare(const StudyProblem& problem, std::size_t mesh_n,
                                                 std::span<const double> t_minus_ladder,
                                                 const StudySettings& settings) {
  if (t_minus_ladder.empty()) throw InvalidArgument("Galerkin comparison needs at least one shift");
  for (std::size_t k = 1; k < t_minus_ladder.size(); ++k)
    if (!(t_minus_ladder[k] < t_minus_ladder[k - 1]))
      throw InvalidArgument("Galerkin comparison: t_minus ladder must be strictly decreasing");

  const FormMatrices forms = assemble(problem.potential, make_mesh(problem.half_length, mesh_n));
  const std::vector<double> ritz = galerkin_upper(forms, forms.size());
  const std::size_t count = std::min(problem.count, forms.size());

  std::vector<GalerkinCompareRow> rows(t_minus_ladder.size() * count);
  run_jobs(t_minus_ladder.size(), settings.jobs, [&](std::size_t k) {
    const double t = t_minus_ladder[k];
    const bool admissible = t < ritz.front();
    for (std::size_t j = 0; j < count; ++j) {
      auto& row = rows[k * count + j];
      row.t_minus = t;
      row.index = static_cast<int>(j + 1);
      row.galerkin_upper = ritz[j];
      row.status = admissible ? "short" : "inadmissible";
    }
    try {
      const BoundSet bounds = bounds_from_tau(tau_spectrum(forms, t));
      for (std::size_t j = 0; j < count && j < bounds.upper_bounds.size(); ++j) {
        auto& row = rows[k * count + j];
        row.lmg_upper = bounds.upper_bounds[j];
        row.gap = *row.lmg_upper - row.galerkin_upper;
        if (admissible) row.status = "ok";
      }
    } catch (const Error& e) {
      for (std::size_t j = 0; j < count; ++j) rows[k * count + j].status = to_string(e.kind());
    }
  });

  for (std::size_t k = 0; k < t_minus_ladder.size(); ++k) {
    for (std::size_t j = 0; j < count; ++j) {
      auto& row = rows[k * count + j];
      if (!row.gap || row.status != "ok") continue;
      if (!(*row.gap > 0.0)) {
        row.verdict = Verdict::violated;
        continue;
      }
      if (k == 0) continue;
      const auto& prev = rows[(k - 1) * count + j];
      if (!prev.gap || prev.status != "ok") continue;
      row.verdict = *row.gap < *prev.gap ? Verdict::monotone : Verdict::violated;
    }
  }
  return rows;
}

FloorVerdict detect_floor(int index, std::span<const TruncationRow> rows, std::span<const std::size_t> meshes) {
  FloorVerdict verdict;
  verdict.index = index;
  std::map<std::size_t, const TruncationRow*> by_n;
  for (const auto& row : rows)
    if (row.point.index == index) by_n[row.point.n] = &row;

  std::optional<std::size_t> previous;
  for (const std::size_t n : meshes) {
    const auto it = by_n.find(n);
    const TruncationRow* row = it == by_n.end() ? nullptr : it->second;
    const bool broken = !row || row->point.crossed || !(row->point.width > 0.0);
    const bool slowed = !broken && previous && row->local_order && *row->local_order < 0.5 * kTheoreticalOrder;
    if (broken || slowed) {
      verdict.stalled_at = n;
      verdict.critical_n = previous;
      return verdict;
    }
    previous = n;
  }
  return verdict;
}

TruncationProbe truncation_probe(const StudyProblem& problem, std::span<const std::size_t> meshes,
                                 const StudySettings& settings) {
  if (meshes.size() < 2) throw InvalidArgument("truncation probe needs at least 2 mesh sizes");
  require_strictly_increasing(meshes, "truncation probe");

  TruncationProbe probe;
  // last non-crossed row per index since the most recent failed mesh
  std::map<int, ConvergenceRow> last_valid;
  for (const auto& point : run_meshes(problem, meshes, settings, true)) {
    if (point.failure) {
      probe.failures.push_back(*point.failure);
      last_valid.clear();
    }
    for (const auto& row : point.rows) {
      TruncationRow out{row, std::nullopt};
      if (row.crossed || !(row.width > 0.0)) {
        last_valid.erase(row.index);
      } else {
        if (const auto prev = last_valid.find(row.index); prev != last_valid.end()) {
          const auto& p = prev->second;
          out.local_order =
              std::log(p.width / row.width) / std::log(static_cast<double>(row.n) / static_cast<double>(p.n));
        }
        last_valid[row.index] = row;
      }
      probe.rows.push_back(out);
    }
  }
  for (std::size_t j = 1; j <= problem.count; ++j)
    probe.floors.push_back(detect_floor(static_cast<int>(j), probe.rows, meshes));
  return probe;
}

}  // namespace spectral
