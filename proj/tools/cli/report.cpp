#include "cli/report.hpp"

#include <cstdio>
#include <map>
#include <ostream>

#include "spectral_enclose/error.hpp"

namespace spectral::cli {
namespace {

using nlohmann::json;

std::string cell(const std::optional<double>& value) { return value ? format_real(*value) : ""; }
std::string cell(bool value) { return value ? "true" : "false"; }

json optional_json(const std::optional<double>& value) { return value ? json(*value) : json(nullptr); }

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  const auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) out << (k ? "," : "") << fields[k];
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

json base_json(const RunMeta& meta) {
  json j;
  j["command"] = to_string(meta.config.command);
  j["config"] = config_json(meta.config);
  if (meta.elapsed_seconds) j["elapsed_seconds"] = *meta.elapsed_seconds;
  return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json failures_json(const std::vector<RunFailure>& failures) {
  json list = json::array();
  for (const auto& f : failures) list.push_back({{"n", f.n}, {"kind", f.kind}, {"message", f.message}});
  return list;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json config_json(const RunConfig& c) {
  json j;
  j["potential"] = std::vector<double>(c.potential.coefficients().begin(), c.potential.coefficients().end());
  j["L"] = c.half_length;
  j["n"] = c.meshes;
  j["t_minus"] = c.t_minus;
  j["t_plus"] = c.t_plus;
  j["eigen_count"] = c.eigen_count;
  j["ell_hint"] = c.ell_hint ? json(*c.ell_hint) : json(nullptr);
  j["format"] = to_string(c.format);
  j["deterministic"] = c.deterministic;
  j["jobs"] = c.jobs;
  if (c.slope_window) j["slope_window"] = {c.slope_window->first, c.slope_window->second};
  return j;
}

void write_enclose(std::ostream& out, const EnclosureReport& r, const RunMeta& meta) {
  if (meta.config.format == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : r.records)
      rows.push_back({std::to_string(e.index), format_real(e.lower), format_real(e.upper), format_real(e.width),
                      format_real(e.t_minus), format_real(e.t_plus), cell(e.galerkin_upper)});
    write_csv(out, {"index", "lower", "upper", "width", "t_minus", "t_plus", "galerkin_upper"}, rows);
    return;
  }
  json j = base_json(meta);
  j["potential"] = r.potential;
  j["L"] = r.half_length;
  j["n"] = r.elements;
  j["dofs"] = r.dofs;
  j["t_minus"] = r.t_minus;
  j["t_plus"] = r.t_plus;
  j["requested"] = r.requested;
  j["short_report"] = r.short_report;
  j["m_plus_at_t_minus"] = r.m_plus_at_t_minus;
  j["m_minus_at_t_plus"] = r.m_minus_at_t_plus;
  j["ell_used"] = r.ell_used;
  j["ell_hint"] = r.ell_hint ? json(*r.ell_hint) : json(nullptr);
  j["ell_mismatch"] = r.ell_mismatch;
  if (r.admissibility) {
    j["admissibility"] = {{"ritz_min", r.admissibility->ritz_min},
                          {"ritz_max", r.admissibility->ritz_max},
                          {"lower_shift_ok", r.admissibility->lower_shift_ok},
                          {"upper_shift_ok", r.admissibility->upper_shift_ok}};
  }
  j["t_minus_below_spectrum"] = r.t_minus_below_spectrum ? json(*r.t_minus_below_spectrum) : json(nullptr);
  j["index_caveat"] = r.index_caveat ? json(*r.index_caveat) : json(nullptr);
  json records = json::array();
  for (const auto& e : r.records) {
    records.push_back({{"index", e.index},
                       {"lower", e.lower},
                       {"upper", e.upper},
                       {"width", e.width},
                       {"t_minus", e.t_minus},
                       {"t_plus", e.t_plus},
                       {"galerkin_upper", optional_json(e.galerkin_upper)}});
  }
  j["records"] = records;
  emit(out, j);
}

void write_mesh_sweep(std::ostream& out, const ConvergenceStudy& study, const RunMeta& meta) {
  std::map<int, const SlopeFit*> fits;
  for (const auto& s : study.slopes) fits[s.index] = &s;
  if (meta.config.format == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    std::map<std::size_t, const RunFailure*> failed;
    for (const auto& f : study.failures) failed[f.n] = &f;
    for (std::size_t n : meta.config.meshes) {
      if (const auto it = failed.find(n); it != failed.end()) {
        rows.push_back({std::to_string(n), format_real(2.0 * meta.config.half_length / static_cast<double>(n)), "",
                        "", "", "", "", "", it->second->kind});
        continue;
      }
      for (const auto& r : study.rows) {
        if (r.n != n) continue;
        const SlopeFit* fit = fits.count(r.index) ? fits[r.index] : nullptr;
        rows.push_back({std::to_string(r.n), format_real(r.h), std::to_string(r.index), format_real(r.lower),
                        format_real(r.upper), format_real(r.width), fit ? cell(fit->order) : "",
                        fit ? to_string(fit->status) : "", r.crossed ? "crossed" : "ok"});
      }
    }
    write_csv(out, {"n", "h", "index", "lower", "upper", "width", "fitted_order", "slope_status", "status"}, rows);
    return;
  }
  json j = base_json(meta);
  j["slope_window"] = {study.slope_window.first, study.slope_window.second};
  json rows = json::array();
  for (const auto& r : study.rows)
    rows.push_back({{"n", r.n},
                    {"h", r.h},
                    {"index", r.index},
                    {"lower", r.lower},
                    {"upper", r.upper},
                    {"width", r.width},
                    {"crossed", r.crossed}});
  j["rows"] = rows;
  json slopes = json::array();
  for (const auto& s : study.slopes)
    slopes.push_back({{"index", s.index},
                      {"order", optional_json(s.order)},
                      {"points_used", s.points_used},
                      {"status", to_string(s.status)}});
  j["slopes"] = slopes;
  j["failures"] = failures_json(study.failures);
  emit(out, j);
}

void write_shift_sweep(std::ostream& out, const std::vector<ShiftSweepRow>& rows, const RunMeta& meta) {
  if (meta.config.format == Format::csv) {
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows)
      table.push_back({format_real(r.t_minus), format_real(r.t_plus), std::to_string(r.index), cell(r.lower),
                       cell(r.upper), cell(r.width), cell(r.admissible), r.status, to_string(r.verdict)});
    write_csv(out, {"t_minus", "t_plus", "index", "lower", "upper", "width", "admissible", "status", "verdict"},
              table);
    return;
  }
  json j = base_json(meta);
  json list = json::array();
  for (const auto& r : rows)
    list.push_back({{"t_minus", r.t_minus},
                    {"t_plus", r.t_plus},
                    {"index", r.index},
                    {"lower", optional_json(r.lower)},
                    {"upper", optional_json(r.upper)},
                    {"width", optional_json(r.width)},
                    {"admissible", r.admissible},
                    {"status", r.status},
                    {"verdict", to_string(r.verdict)}});
  j["rows"] = list;
  emit(out, j);
}

void write_galerkin_compare(std::ostream& out, const std::vector<GalerkinCompareRow>& rows, const RunMeta& meta) {
  if (meta.config.format == Format::csv) {
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows)
      table.push_back({format_real(r.t_minus), std::to_string(r.index), cell(r.lmg_upper), format_real(r.galerkin_upper),
                       cell(r.gap), r.status, to_string(r.verdict)});
    write_csv(out, {"t_minus", "index", "lmg_upper", "galerkin_upper", "gap", "status", "verdict"}, table);
    return;
  }
  json j = base_json(meta);
  json list = json::array();
  for (const auto& r : rows)
    list.push_back({{"t_minus", r.t_minus},
                    {"index", r.index},
                    {"lmg_upper", optional_json(r.lmg_upper)},
                    {"galerkin_upper", r.galerkin_upper},
                    {"gap", optional_json(r.gap)},
                    {"status", r.status},
                    {"verdict", to_string(r.verdict)}});
  j["rows"] = list;
  emit(out, j);
}

void write_truncation_probe(std::ostream& out, const TruncationProbe& probe, const RunMeta& meta) {
  std::map<int, const FloorVerdict*> floors;
  for (const auto& f : probe.floors) floors[f.index] = &f;
  const auto size_cell = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  if (meta.config.format == Format::csv) {
    std::vector<std::vector<std::string>> table;
    std::map<std::size_t, const RunFailure*> failed;
    for (const auto& f : probe.failures) failed[f.n] = &f;
    for (std::size_t n : meta.config.meshes) {
      if (const auto it = failed.find(n); it != failed.end()) {
        table.push_back({std::to_string(n), format_real(2.0 * meta.config.half_length / static_cast<double>(n)), "",
                         "", "", "", "", "", it->second->kind, "", ""});
        continue;
      }
      for (const auto& row : probe.rows) {
        const auto& r = row.point;
        if (r.n != n) continue;
        const FloorVerdict* f = floors.count(r.index) ? floors[r.index] : nullptr;
        table.push_back({std::to_string(r.n), format_real(r.h), std::to_string(r.index), format_real(r.lower),
                         format_real(r.upper), format_real(r.width), cell(r.crossed), cell(row.local_order),
                         r.crossed ? "crossed" : "ok", f ? size_cell(f->critical_n) : "",
                         f ? size_cell(f->stalled_at) : ""});
      }
    }
    write_csv(out,
              {"n", "h", "index", "lower", "upper", "width", "crossed", "local_order", "status", "floor_critical_n",
               "floor_stalled_at"},
              table);
    return;
  }
  json j = base_json(meta);
  json rows = json::array();
  for (const auto& row : probe.rows)
    rows.push_back({{"n", row.point.n},
                    {"h", row.point.h},
                    {"index", row.point.index},
                    {"lower", row.point.lower},
                    {"upper", row.point.upper},
                    {"width", row.point.width},
                    {"crossed", row.point.crossed},
                    {"local_order", optional_json(row.local_order)}});
  j["rows"] = rows;
  json verdicts = json::array();
  for (const auto& f : probe.floors)
    verdicts.push_back({{"index", f.index},
                        {"floor_detected", f.floor_detected()},
                        {"critical_n", f.critical_n ? json(*f.critical_n) : json(nullptr)},
                        {"stalled_at", f.stalled_at ? json(*f.stalled_at) : json(nullptr)}});
  j["floors"] = verdicts;
  j["failures"] = failures_json(probe.failures);
  emit(out, j);
}

json error_json(const std::exception& error, int exit_code) {
  json j;
  const auto* typed = dynamic_cast<const Error*>(&error);
  j["error"] = typed ? to_string(typed->kind()) : "internal-error";
  j["message"] = error.what();
  j["exit_code"] = exit_code;
  if (const auto* e = dynamic_cast<const ShiftInSpectrum*>(&error)) j["shift"] = e->shift();
  if (const auto* e = dynamic_cast<const InconsistentEnclosure*>(&error)) j["index"] = e->index();
  if (const auto* e = dynamic_cast<const NotPositiveDefinite*>(&error)) j["pivot_index"] = e->pivot_index();
  return j;
}

}  // namespace spectral::cli
