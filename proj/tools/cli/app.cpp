#include "cli/app.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/config.hpp"
#include "cli/report.hpp"
#include "spectral_enclose/assembly.hpp"
#include "spectral_enclose/lmg.hpp"
#include "spectral_enclose/studies.hpp"

namespace spectral::cli {
namespace {

struct RawOptions {
  std::optional<std::string> config;
  std::optional<std::string> potential;
  std::optional<double> box_l;
  std::optional<std::string> mesh_n;
  std::optional<std::string> t_minus;
  std::optional<std::string> t_plus;
  std::optional<std::size_t> count;
  std::optional<int> ell_hint;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> jobs;
  std::optional<std::string> slope_window;
  bool deterministic = false;
  bool quiet = false;
};

void add_options(CLI::App* sub, RawOptions& raw, Command command) {
  sub->add_option("--config", raw.config, "flat JSON config file; flags override its values");
  sub->add_option("--potential", raw.potential, "harmonic, anharmonic, zero, or coefficients c0,c1,... of V(x)");
  sub->add_option("--box-l", raw.box_l, "half-length L of the box [-L, L]");
  sub->add_option("--mesh-n", raw.mesh_n, "number of elements n, or a comma-separated list");
  sub->add_option("--t-minus", raw.t_minus, "shift below the spectrum (list for galerkin-compare/shift-sweep)");
  sub->add_option("--t-plus", raw.t_plus, "shift above the wanted eigenvalues (list for shift-sweep)");
  sub->add_option("--count", raw.count, "number of eigenvalues m");
  sub->add_option("--ell-hint", raw.ell_hint, "known number of eigenvalues below t+");
  sub->add_option("--out", raw.out,
                  command == Command::dump_matrices ? "output directory for A0.txt, A1.txt, A2.txt"
                                                    : "report path (stdout if omitted)");
  sub->add_option("--format", raw.format, "csv or json");
  sub->add_flag("--deterministic", raw.deterministic, "single worker, no timing fields");
  sub->add_option("--jobs", raw.jobs, "worker threads for sweep points (default $SPECTRAL_ENCLOSE_JOBS or 1)");
  sub->add_flag("--quiet", raw.quiet, "no summary on stdout");
  if (command == Command::mesh_sweep) sub->add_option("--slope-window", raw.slope_window, "n range MIN,MAX for the fit");
}

RunConfig resolve(Command command, const RawOptions& raw) {
  RunConfig config = defaults_for(command);
  if (const char* env = std::getenv("SPECTRAL_ENCLOSE_JOBS"); env && *env) config.jobs = parse_jobs(env);
  if (raw.config) {
    std::ifstream in(*raw.config);
    if (!in) throw InvalidArgument("cannot read config file '" + *raw.config + "'");
    nlohmann::json object;
    try {
      object = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidArgument("config file '" + *raw.config + "' is not valid JSON: " + e.what());
    }
    apply_json(config, object);
  }
  if (raw.potential) config.potential = parse_potential(*raw.potential);
  if (raw.box_l) config.half_length = *raw.box_l;
  if (raw.mesh_n) config.meshes = parse_size_list(*raw.mesh_n);
  if (raw.t_minus) config.t_minus = parse_real_list(*raw.t_minus);
  if (raw.t_plus) config.t_plus = parse_real_list(*raw.t_plus);
  if (raw.count) config.eigen_count = *raw.count;
  if (raw.ell_hint) config.ell_hint = *raw.ell_hint;
  if (raw.out) config.output = *raw.out;
  if (raw.format) config.format = parse_format(*raw.format);
  if (raw.deterministic) config.deterministic = true;
  if (raw.jobs) config.jobs = parse_jobs(*raw.jobs);
  if (raw.slope_window) {
    const auto window = parse_size_list(*raw.slope_window);
    if (window.size() != 2) throw InvalidArgument("--slope-window needs MIN,MAX");
    config.slope_window = std::pair{window[0], window[1]};
  }
  if (config.deterministic) config.jobs = 1;
  validate(config);
  return config;
}

std::string fmt15(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

std::string fmt3(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", value);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::vector<std::string> warnings(const EnclosureReport& r) {
  std::vector<std::string> lines;
  if (r.short_report)
    lines.push_back("warning: only " + std::to_string(r.records.size()) + " of " + std::to_string(r.requested) +
                    " enclosures available");
  if (r.admissibility && !r.admissibility->ok()) lines.emplace_back("warning: shifts fail the trial-space conditions");
  if (r.t_minus_below_spectrum == false) lines.emplace_back("warning: t- is not below the smallest Ritz value");
  if (r.ell_mismatch) lines.push_back("warning: ell hint differs from m-(t+) = " + std::to_string(r.m_minus_at_t_plus));
  return lines;
}

template <class Result>
std::vector<std::string> warnings(const Result& result) {
  std::vector<std::string> lines;
  if constexpr (requires { result.failures; })
    for (const auto& f : result.failures)
      lines.push_back("warning: n=" + std::to_string(f.n) + " failed (" + f.kind + "): " + f.message);
  return lines;
}

void summarize(std::ostream& out, const EnclosureReport& r) {
  out << "potential " << r.potential << ", L = " << fmt15(r.half_length) << ", n = " << r.elements << " (" << r.dofs
      << " DOFs), t- = " << fmt15(r.t_minus) << ", t+ = " << fmt15(r.t_plus) << '\n';
  out << pad("j", 3) << pad("lower", 20) << pad("upper", 20) << pad("width", 12) << pad("galerkin", 20) << '\n';
  for (const auto& e : r.records)
    out << pad(std::to_string(e.index), 3) << pad(fmt15(e.lower), 20) << pad(fmt15(e.upper), 20)
        << pad(fmt3(e.width), 12) << pad(e.galerkin_upper ? fmt15(*e.galerkin_upper) : "-", 20) << '\n';
  for (const auto& line : warnings(r)) out << line << '\n';
  if (r.index_caveat) out << "note: " << *r.index_caveat << '\n';
}

void summarize(std::ostream& out, const ConvergenceStudy& study) {
  out << "fitted order over n in [" << study.slope_window.first << ", " << study.slope_window.second << "]\n";
  for (const auto& s : study.slopes)
    out << "  j=" << s.index << ": " << (s.order ? fmt15(*s.order) : std::string("-")) << " (" << to_string(s.status)
        << ", " << s.points_used << " points)\n";
  for (const auto& f : study.failures) out << "  n=" << f.n << " failed: " << f.kind << '\n';
}

void summarize(std::ostream& out, const std::vector<ShiftSweepRow>& rows) {
  std::size_t violated = 0, flagged = 0;
  for (const auto& r : rows) {
    violated += r.verdict == Verdict::violated;
    flagged += r.status != "ok";
  }
  out << rows.size() << " rows, " << violated << " monotonicity violations, " << flagged << " flagged rows\n";
}

void summarize(std::ostream& out, const std::vector<GalerkinCompareRow>& rows) {
  for (const auto& r : rows)
    out << "  t-=" << fmt15(r.t_minus) << " j=" << r.index << " gap " << (r.gap ? fmt3(*r.gap) : std::string("-"))
        << " (" << r.status << ", " << to_string(r.verdict) << ")\n";
}

void summarize(std::ostream& out, const TruncationProbe& probe) {
  for (const auto& f : probe.floors) {
    out << "  j=" << f.index << ": ";
    if (!f.floor_detected())
      out << "no floor detected\n";
    else
      out << "width stops improving at n=" << *f.stalled_at << " (critical n="
          << (f.critical_n ? std::to_string(*f.critical_n) : std::string("-")) << ")\n";
  }
  for (const auto& f : probe.failures) out << "  n=" << f.n << " failed: " << f.kind << '\n';
}

int dump_matrices(const RunConfig& config, std::ostream& out, bool quiet) {
  const FormMatrices forms = assemble(config.potential, make_mesh(config.half_length, config.meshes.front()));
  const std::filesystem::path dir = config.output.value_or(".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::pair<const char*, const Matrix*> files[] = {{"A0.txt", &forms.a0}, {"A1.txt", &forms.a1},
                                                         {"A2.txt", &forms.a2}};
  for (const auto& [name, matrix] : files) {
    std::ofstream file(dir / name);
    if (!file) throw InvalidArgument("cannot write '" + (dir / name).string() + "'");
    write_matrix(file, *matrix);
    if (!quiet) out << "wrote " << (dir / name).string() << '\n';
  }
  return 0;
}

template <class Result, class Writer>
void deliver(const RunConfig& config, const Result& result, Writer writer, std::optional<double> elapsed,
             std::ostream& out, std::ostream& err, bool quiet) {
  const RunMeta meta{config, config.deterministic ? std::nullopt : elapsed};
  if (!config.output) {
    writer(out, result, meta);
    if (!quiet)
      for (const auto& line : warnings(result)) err << line << '\n';
    return;
  }
  std::ofstream file(*config.output);
  if (!file) throw InvalidArgument("cannot write report '" + *config.output + "'");
  writer(file, result, meta);
  file.close();
  if (!file) throw InvalidArgument("failed writing report '" + *config.output + "'");
  if (!quiet) {
    summarize(out, result);
    out << "report: " << *config.output << '\n';
  }
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err, bool quiet) {
  if (config.command == Command::dump_matrices) return dump_matrices(config, out, quiet);

  const StudyProblem problem = problem_from(config);
  const StudySettings settings{config.jobs};
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  switch (config.command) {
    case Command::enclose: {
      const FormMatrices forms = assemble(config.potential, make_mesh(config.half_length, config.meshes.front()));
      EncloseOptions options;
      options.parallel = config.jobs > 1;
      const EnclosureReport report =
          enclose(forms, problem.t_minus, problem.t_plus, problem.count, problem.ell_hint, options);
      deliver(config, report, write_enclose, elapsed(), out, err, quiet);
      break;
    }
    case Command::mesh_sweep: {
      const auto study = mesh_sweep(problem, config.meshes, config.slope_window, settings);
      deliver(config, study, write_mesh_sweep, elapsed(), out, err, quiet);
      break;
    }
    case Command::shift_sweep: {
      std::vector<ShiftPair> ladder;
      for (std::size_t k = 0; k < config.t_plus.size(); ++k)
        ladder.push_back({config.t_minus.empty() ? -config.t_plus[k] : config.t_minus[k], config.t_plus[k]});
      const auto rows = shift_sweep(problem, config.meshes.front(), ladder, settings);
      deliver(config, rows, write_shift_sweep, elapsed(), out, err, quiet);
      break;
    }
    case Command::galerkin_compare: {
      const auto rows = galerkin_compare(problem, config.meshes.front(), config.t_minus, settings);
      deliver(config, rows, write_galerkin_compare, elapsed(), out, err, quiet);
      break;
    }
    case Command::truncation_probe: {
      const auto probe = truncation_probe(problem, config.meshes, settings);
      deliver(config, probe, write_truncation_probe, elapsed(), out, err, quiet);
      break;
    }
    case Command::dump_matrices:
      break;
  }
  return 0;
}

int fail(std::ostream& err, const std::exception& e, int code) {
  err << error_json(e, code).dump() << '\n';
  return code;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::unsupported_degree:
      return 2;
    case ErrorKind::shift_in_spectrum:
      return 3;
    case ErrorKind::not_positive_definite:
    case ErrorKind::convergence_failure:
      return 4;
    case ErrorKind::inconsistent_enclosure:
      return 5;
  }
  return 4;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-sided eigenvalue enclosures for -u'' + V(x) u on [-L, L]", "spectral-enclose"};
  app.require_subcommand(1);
  RawOptions raw;
  std::map<CLI::App*, Command> commands;
  const std::pair<Command, const char*> entries[] = {
      {Command::enclose, "enclosures for the lowest eigenvalues"},
      {Command::mesh_sweep, "enclosure widths and fitted order over a list of meshes"},
      {Command::shift_sweep, "enclosures along a ladder of shift pairs"},
      {Command::galerkin_compare, "upper bounds against Galerkin values along a t- ladder"},
      {Command::truncation_probe, "round-off floor detection on large meshes"},
      {Command::dump_matrices, "write the assembled form matrices"},
  };
  for (const auto& [command, description] : entries) {
    CLI::App* sub = app.add_subcommand(to_string(command), description);
    add_options(sub, raw, command);
    commands[sub] = command;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(err, InvalidArgument(e.what()), 2);
  }

  try {
    const RunConfig config = resolve(commands.at(app.get_subcommands().front()), raw);
    return execute(config, out, err, raw.quiet);
  } catch (const Error& e) {
    return fail(err, e, exit_code_for(e.kind()));
  } catch (const std::exception& e) {
    return fail(err, e, 4);
  }
}

}  // namespace spectral::cli
