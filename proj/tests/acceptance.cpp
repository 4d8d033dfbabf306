// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spectral_enclose/eigensolve.hpp"
#include "spectral_enclose/error.hpp"
#include "spectral_enclose/lmg.hpp"
#include "spectral_enclose/studies.hpp"

using namespace spectral;

namespace {

constexpr double kReferenceRelTol = 1e-6;
constexpr double kGalerkinAbsTol = 1e-9;
constexpr double kReferenceRuntimeLimit = 30.0;
constexpr double kSlopeMin = 3.5;
constexpr double kSlopeMax = 4.5;
constexpr double kConvergenceRuntimeLimit = 180.0;
constexpr double kShiftSlack = 1e-13;
constexpr double kCauchySchwarzTol = 1e-10;
constexpr double kResidualTol = 1e-10;
constexpr double kOrthonormalTol = 1e-10;
constexpr double kDirichletTol = 1e-8;
constexpr double kZeroWidthTol = 1e-12;
constexpr std::size_t kFloorMin = 300;
constexpr std::size_t kFloorMax = 700;

struct Enclosure {
  double galerkin;
  double lower;
  double upper;
};

const Enclosure kHarmonicReference[] = {
    {1.00000000000018, 0.99999999402733, 1.00000000274037},
    {3.00000000000167, 2.99999993414717, 3.00000004427331},
    {5.00000000001386, 4.99999969518901, 5.00000020285501},
    {7.00000000018134, 6.99999905084962, 7.00000063700910},
    {9.00000000261104, 8.99999763441928, 9.00000158165711},
};
constexpr double kAnharmonicLower1 = 1.06036205784546;
constexpr double kAnharmonicUpper1 = 1.06036210271726;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome reference_harmonic() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const FormMatrices forms = assemble(Potential::harmonic(), make_mesh(6.0, 400));
  const EnclosureReport report = enclose(forms, -20.0, 20.0, 5);
  const double elapsed = seconds_since(start);
  o.require(report.records.size() == 5, "expected 5 enclosures");
  double worst_endpoint = 0.0, worst_galerkin = 0.0;
  for (const auto& r : report.records) {
    const double exact = 2.0 * r.index - 1.0;
    const Enclosure& t = kHarmonicReference[r.index - 1];
    o.require(r.lower <= exact && exact <= r.upper, fmt("j=%g misses %g", r.index, exact));
    worst_endpoint = std::max({worst_endpoint, rel(r.lower, t.lower), rel(r.upper, t.upper)});
    if (r.galerkin_upper) worst_galerkin = std::max(worst_galerkin, std::abs(*r.galerkin_upper - t.galerkin));
    else o.require(false, "missing Galerkin value");
  }
  o.require(worst_endpoint <= kReferenceRelTol, fmt("endpoint rel err %.3g", worst_endpoint));
  o.require(worst_galerkin <= kGalerkinAbsTol, fmt("Galerkin abs err %.3g", worst_galerkin));
  o.require(elapsed < kReferenceRuntimeLimit, fmt("runtime %.1f s", elapsed));
  if (o.pass)
    o.detail = fmt("endpoint rel err %.2e, Galerkin abs err %.2e, %.1f s", worst_endpoint, worst_galerkin, elapsed);
  return o;
}

Outcome reference_anharmonic() {
  Outcome o;
  const FormMatrices forms = assemble(Potential::anharmonic(), make_mesh(6.0, 400));
  const EnclosureReport report = enclose(forms, -20.0, 20.0, 5);
  o.require(report.records.size() == 5, "expected 5 enclosures");
  if (report.records.empty()) return o;
  const auto& first = report.records.front();
  const double err = std::max(rel(first.lower, kAnharmonicLower1), rel(first.upper, kAnharmonicUpper1));
  o.require(err <= kReferenceRelTol, fmt("lambda_1 endpoint rel err %.3g", err));

  const auto fine = galerkin_upper(assemble(Potential::anharmonic(), make_mesh(6.0, 1000)), 5);
  for (const auto& r : report.records) {
    const double g = fine[r.index - 1];
    o.require(r.lower <= g && g <= r.upper, fmt("j=%g misses Galerkin %.15g", r.index, g));
  }
  if (o.pass) o.detail = fmt("lambda_1 in [%.15g, %.15g], rel err %.2e", first.lower, first.upper, err);
  return o;
}

Outcome convergence_order() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::size_t> meshes{100, 141, 200, 282, 400};
  std::string slopes;
  for (const auto& [name, v] : {std::pair{"har", Potential::harmonic()}, std::pair{"anh", Potential::anharmonic()}}) {
    StudyProblem problem;
    problem.potential = v;
    problem.count = 3;
    const ConvergenceStudy study = mesh_sweep(problem, meshes);
    o.require(study.failures.empty(), std::string(name) + " sweep had failed meshes");
    for (const auto& s : study.slopes) {
      const bool ok = s.status == SlopeStatus::ok && *s.order >= kSlopeMin && *s.order <= kSlopeMax;
      o.require(ok, std::string(name) + fmt(" j=%g slope %.3f", s.index, s.order.value_or(NAN)));
      slopes += std::string(slopes.empty() ? "" : " ") + name + fmt(":%.3f", s.order.value_or(NAN));
    }
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < kConvergenceRuntimeLimit, fmt("runtime %.1f s", elapsed));
  if (o.pass) o.detail = "slopes " + slopes + fmt(", %.1f s", elapsed);
  return o;
}

Outcome shift_monotonicity() {
  Outcome o;
  StudyProblem problem;
  std::vector<ShiftPair> ladder;
  for (double t : {12.0, 16.0, 20.0, 40.0, 80.0}) ladder.push_back({-t, t});
  const auto rows = shift_sweep(problem, 200, ladder);
  const std::size_t count = problem.count;
  for (const auto& row : rows)
    o.require(row.status == "ok", fmt("t+=%g j=%g status ", row.t_plus, row.index) + row.status);
  if (!o.pass) return o;
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    for (std::size_t j = 0; j < count; ++j) {
      const auto& a = rows[(k - 1) * count + j];
      const auto& b = rows[k * count + j];
      o.require(*b.lower >= *a.lower - kShiftSlack, fmt("lower j=%g drops at t+=%g", b.index, b.t_plus));
      o.require(*b.upper <= *a.upper + kShiftSlack, fmt("upper j=%g rises at t+=%g", b.index, b.t_plus));
      o.require(*b.width <= *a.width + kShiftSlack, fmt("width j=%g grows at t+=%g", b.index, b.t_plus));
    }
  }
  if (o.pass) o.detail = fmt("%g pairs x %g indices monotone", ladder.size(), count);
  return o;
}

Outcome galerkin_limit() {
  Outcome o;
  StudyProblem problem;
  problem.count = 1;
  const std::vector<double> ladder{-5.0, -10.0, -20.0, -40.0, -80.0, -160.0};
  const auto rows = galerkin_compare(problem, 200, ladder);
  double previous = INFINITY;
  std::string gaps;
  for (const auto& row : rows) {
    if (row.status != "ok" || !row.gap) {
      o.require(false, fmt("t-=%g status ", row.t_minus) + row.status);
      continue;
    }
    o.require(*row.gap > 0.0, fmt("t-=%g gap %.3g not positive", row.t_minus, *row.gap));
    o.require(*row.gap < previous, fmt("t-=%g gap %.3g not decreasing", row.t_minus, *row.gap));
    previous = *row.gap;
    gaps += fmt(gaps.empty() ? "%.2e" : " %.2e", *row.gap);
  }
  if (o.pass) o.detail = "gaps " + gaps;
  return o;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937_64 rng(20240607);
  std::normal_distribution<double> gauss;

  const FormMatrices forms = assemble(Potential::harmonic(), make_mesh(4.0, 20));
  std::uniform_real_distribution<double> pick_t(-50.0, 50.0);
  std::vector<double> u(forms.size());
  double worst_cs = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    for (double& x : u) x = gauss(rng);
    const ShiftedForms s = shift(forms, pick_t(rng));
    const double scale = bilinear(forms.a0, u, u) * bilinear(s.a2t, u, u);
    const double a1 = bilinear(s.a1t, u, u);
    worst_cs = std::max(worst_cs, (a1 * a1 - scale) / scale);
  }
  o.require(worst_cs <= kCauchySchwarzTol, fmt("Cauchy-Schwarz excess %.3g", worst_cs));

  double worst_residual = 0.0, worst_orth = 0.0;
  for (std::size_t n = 1; n <= 50; n += 7) {
    Matrix m(n, n), r(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        m(i, j) = m(j, i) = gauss(rng);
        r(i, j) = r(j, i) = gauss(rng);
      }
    Matrix b = multiply(r, r.transposed());
    for (std::size_t i = 0; i < n; ++i) b(i, i) += static_cast<double>(n);
    symmetrize(b);
    const auto e = eig_gsym(m, b);
    const double scale = frobenius_norm(m) + frobenius_norm(b) * std::abs(e.values.back());
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = e.vectors(i, k);
      const auto mv = multiply(m, v);
      const auto bv = multiply(b, v);
      for (std::size_t i = 0; i < n; ++i)
        worst_residual = std::max(worst_residual, std::abs(mv[i] - e.values[k] * bv[i]) / scale);
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = e.vectors(i, l);
        worst_orth = std::max(worst_orth, std::abs(bilinear(b, v, w) - (k == l ? 1.0 : 0.0)));
      }
    }
  }
  o.require(worst_residual <= kResidualTol, fmt("GEVP residual %.3g", worst_residual));
  o.require(worst_orth <= kOrthonormalTol, fmt("B-orthonormality %.3g", worst_orth));

  const auto dirichlet = galerkin_upper(assemble(Potential::zero(), make_mesh(std::numbers::pi / 2.0, 16)), 1);
  const double dirichlet_err = std::abs(dirichlet[0] - 1.0);
  o.require(dirichlet_err < kDirichletTol, fmt("Dirichlet error %.3g", dirichlet_err));

  const std::vector<double> values{1.0, 2.5, 4.0, 7.0, 11.0};
  std::vector<double> squares;
  for (double v : values) squares.push_back(v * v);
  const FormMatrices exact{Matrix::identity(5), Matrix::diagonal(values), Matrix::diagonal(squares),
                           make_mesh(1.0, 2), Potential::zero()};
  const EnclosureReport report = enclose(exact, 0.0, 5.0, 3);
  double worst_width = report.records.size() == 3 ? 0.0 : INFINITY;
  for (const auto& r : report.records) worst_width = std::max(worst_width, std::abs(r.width));
  o.require(worst_width <= kZeroWidthTol, fmt("synthetic width %.3g", worst_width));

  if (o.pass)
    o.detail = fmt("CS excess %.1e, GEVP residual %.1e, Dirichlet error %.1e", worst_cs, worst_residual, dirichlet_err) +
               fmt(", synthetic width %.1e", worst_width);
  return o;
}

Outcome truncation_floor() {
  Outcome o;
  StudyProblem problem;
  problem.count = 1;
  std::vector<std::size_t> meshes;
  for (std::size_t n = kFloorMin; n <= kFloorMax; n += 50) meshes.push_back(n);
  const TruncationProbe probe = truncation_probe(problem, meshes);
  const FloorVerdict& floor = probe.floors.at(0);
  o.require(floor.floor_detected(), "no floor detected for j=1");
  if (floor.stalled_at)
    o.require(*floor.stalled_at >= kFloorMin && *floor.stalled_at <= kFloorMax,
              fmt("stall at n=%g outside range", static_cast<double>(*floor.stalled_at)));
  if (o.pass)
    o.detail = fmt("j=1 stops improving at n=%g (critical n=%g)", static_cast<double>(*floor.stalled_at),
                   static_cast<double>(floor.critical_n.value_or(0)));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"harmonic reference enclosures", reference_harmonic},
      {"anharmonic reference enclosures", reference_anharmonic},
      {"convergence order", convergence_order},
      {"shift monotonicity", shift_monotonicity},
      {"Galerkin limit trend", galerkin_limit},
      {"property suites", property_suites},
      {"truncation floor", truncation_floor},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    failed += !outcome.pass;
    std::printf("criterion %zu %s: %s (%s)\n", k + 1, outcome.pass ? "PASS" : "FAIL", criteria[k].first,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
