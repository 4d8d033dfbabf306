#include "cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <type_traits>

#include "spectral_enclose/error.hpp"

namespace spectral::cli {
namespace {

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    const auto first = part.find_first_not_of(" \t");
    const auto last = part.find_last_not_of(" \t");
    parts.push_back(first == std::string::npos ? "" : part.substr(first, last - first + 1));
  }
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

double parse_real(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(value))
    throw InvalidArgument("not a finite number: '" + text + "'");
  return value;
}

std::size_t parse_size(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || errno == ERANGE || value < 0)
    throw InvalidArgument("not a non-negative integer: '" + text + "'");
  return static_cast<std::size_t>(value);
}

template <class T>
void check_type(const nlohmann::json& value, const char* key) {
  if constexpr (std::is_same_v<T, std::size_t>) {
    if (!value.is_number_unsigned())
      throw InvalidArgument(std::string("config key '") + key + "' needs non-negative integers");
  }
}

template <class T>
std::vector<T> json_list(const nlohmann::json& value, const char* key) {
  if (value.is_array())
    for (const auto& item : value) check_type<T>(item, key);
  else
    check_type<T>(value, key);
  try {
    if (value.is_array()) return value.get<std::vector<T>>();
    return {value.get<T>()};
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("config key '") + key + "' has the wrong type");
  }
}

template <class T>
T json_value(const nlohmann::json& value, const char* key) {
  check_type<T>(value, key);
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("config key '") + key + "' has the wrong type");
  }
}

void require_single(const std::vector<std::size_t>& meshes, const char* command) {
  if (meshes.size() != 1) throw InvalidArgument(std::string(command) + " takes exactly one mesh size");
}

void require_shift_pair(const RunConfig& c, const char* command) {
  if (c.t_minus.size() != 1 || c.t_plus.size() != 1)
    throw InvalidArgument(std::string(command) + " takes exactly one t_minus and one t_plus");
  if (!(c.t_minus[0] < c.t_plus[0])) throw InvalidArgument("t_minus must be below t_plus");
}

void require_increasing(const std::vector<std::size_t>& meshes, std::size_t at_least, const char* command) {
  if (meshes.size() < at_least)
    throw InvalidArgument(std::string(command) + " needs at least " + std::to_string(at_least) + " mesh sizes");
  for (std::size_t k = 1; k < meshes.size(); ++k)
    if (!(meshes[k] > meshes[k - 1])) throw InvalidArgument("mesh list must be strictly increasing");
}

}  // namespace

const char* to_string(Command command) noexcept {
  switch (command) {
    case Command::enclose: return "enclose";
    case Command::mesh_sweep: return "mesh-sweep";
    case Command::shift_sweep: return "shift-sweep";
    case Command::galerkin_compare: return "galerkin-compare";
    case Command::truncation_probe: return "truncation-probe";
    case Command::dump_matrices: return "dump-matrices";
  }
  return "unknown";
}

const char* to_string(Format format) noexcept { return format == Format::csv ? "csv" : "json"; }

RunConfig defaults_for(Command command) {
  RunConfig c;
  c.command = command;
  c.t_minus = {-20.0};
  c.t_plus = {20.0};
  switch (command) {
    case Command::enclose:
    case Command::dump_matrices:
      c.meshes = {400};
      break;
    case Command::mesh_sweep:
      c.meshes = {100, 141, 200, 282, 400};
      break;
    case Command::shift_sweep:
      c.meshes = {200};
      c.t_plus = {12.0, 16.0, 20.0, 40.0, 80.0};
      c.t_minus.clear();
      break;
    case Command::galerkin_compare:
      c.meshes = {200};
      c.t_minus = {-5.0, -10.0, -20.0, -40.0, -80.0, -160.0};
      c.eigen_count = 1;
      break;
    case Command::truncation_probe:
      c.meshes.clear();
      for (std::size_t n = 300; n <= 1050; n += 50) c.meshes.push_back(n);
      break;
  }
  return c;
}

Potential parse_potential(const std::string& text) {
  if (text == "harmonic") return Potential::harmonic();
  if (text == "anharmonic") return Potential::anharmonic();
  if (text == "zero") return Potential::zero();
  const auto coefficients = parse_real_list(text);
  return Potential(coefficients);
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split(text)) values.push_back(parse_real(part));
  if (values.empty()) throw InvalidArgument("empty list");
  return values;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> values;
  for (const auto& part : split(text)) values.push_back(parse_size(part));
  if (values.empty()) throw InvalidArgument("empty list");
  return values;
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw InvalidArgument("format must be csv or json, got '" + text + "'");
}

std::size_t parse_jobs(const std::string& text) {
  const std::size_t jobs = parse_size(text);
  if (jobs == 0) throw InvalidArgument("jobs must be at least 1");
  return jobs;
}

void apply_json(RunConfig& config, const nlohmann::json& object) {
  if (!object.is_object()) throw InvalidArgument("config file must hold a flat JSON object");
  for (const auto& [key, value] : object.items()) {
    if (key == "potential") {
      if (value.is_string())
        config.potential = parse_potential(value.get<std::string>());
      else
        config.potential = Potential(json_list<double>(value, "potential"));
    } else if (key == "L") {
      config.half_length = json_value<double>(value, "L");
    } else if (key == "n") {
      config.meshes = json_list<std::size_t>(value, "n");
    } else if (key == "t_minus") {
      config.t_minus = json_list<double>(value, "t_minus");
    } else if (key == "t_plus") {
      config.t_plus = json_list<double>(value, "t_plus");
    } else if (key == "eigen_count") {
      config.eigen_count = json_value<std::size_t>(value, "eigen_count");
    } else if (key == "ell_hint") {
      if (value.is_null())
        config.ell_hint.reset();
      else
        config.ell_hint = json_value<int>(value, "ell_hint");
    } else if (key == "output") {
      config.output = json_value<std::string>(value, "output");
    } else if (key == "format") {
      config.format = parse_format(json_value<std::string>(value, "format"));
    } else if (key == "deterministic") {
      config.deterministic = json_value<bool>(value, "deterministic");
    } else if (key == "jobs") {
      config.jobs = json_value<std::size_t>(value, "jobs");
    } else if (key == "slope_window") {
      const auto window = json_list<std::size_t>(value, "slope_window");
      if (window.size() != 2) throw InvalidArgument("slope_window needs two mesh sizes");
      config.slope_window = std::pair{window[0], window[1]};
    } else {
      throw InvalidArgument("unknown config key '" + key + "'");
    }
  }
}

void validate(const RunConfig& c) {
  if (!(c.half_length > 0.0) || !std::isfinite(c.half_length)) throw InvalidArgument("L must be positive and finite");
  if (c.ell_hint && *c.ell_hint < 0) throw InvalidArgument("ell_hint must be non-negative");
  if (c.jobs == 0) throw InvalidArgument("jobs must be at least 1");
  for (std::size_t n : c.meshes)
    if (n < 2) throw InvalidArgument("every mesh needs at least 2 elements");
  const char* name = to_string(c.command);
  switch (c.command) {
    case Command::enclose:
      require_single(c.meshes, name);
      require_shift_pair(c, name);
      break;
    case Command::mesh_sweep:
      require_increasing(c.meshes, 4, name);
      require_shift_pair(c, name);
      if (c.slope_window && c.slope_window->first > c.slope_window->second)
        throw InvalidArgument("slope_window must satisfy min <= max");
      break;
    case Command::truncation_probe:
      require_increasing(c.meshes, 2, name);
      require_shift_pair(c, name);
      break;
    case Command::shift_sweep:
      require_single(c.meshes, name);
      if (c.t_plus.empty()) throw InvalidArgument("shift-sweep needs a t_plus ladder");
      if (!c.t_minus.empty() && c.t_minus.size() != c.t_plus.size())
        throw InvalidArgument("shift-sweep needs as many t_minus as t_plus values (or none, for t_minus = -t_plus)");
      break;
    case Command::galerkin_compare:
      require_single(c.meshes, name);
      if (c.t_minus.empty()) throw InvalidArgument("galerkin-compare needs a t_minus ladder");
      break;
    case Command::dump_matrices:
      require_single(c.meshes, name);
      break;
  }
}

StudyProblem problem_from(const RunConfig& config) {
  StudyProblem p;
  p.potential = config.potential;
  p.half_length = config.half_length;
  if (!config.t_minus.empty()) p.t_minus = config.t_minus.front();
  if (!config.t_plus.empty()) p.t_plus = config.t_plus.front();
  p.count = config.eigen_count;
  p.ell_hint = config.ell_hint;
  return p;
}

}  // namespace spectral::cli
