#include "pii/config.hpp"

#include "pii/error.hpp"
#include "pii/mesh.hpp"
#include "pii/series.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pii {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::string_view key) {
  if (text.size() > 1 && text.front() == '+')
    text.remove_prefix(1);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ValidationError(fmt::format("config: {} expects a finite number, got '{}'", key, text));
  return v;
}

long parse_integer(std::string_view text, std::string_view key) {
  long v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ValidationError(fmt::format("config: {} expects an integer, got '{}'", key, text));
  return v;
}

} // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
  case Mode::Reference:
    return "reference";
  case Mode::Series:
    return "series";
  case Mode::Extraordinary:
    return "extraordinary";
  case Mode::Direct:
    return "direct";
  case Mode::Sweep:
    return "sweep";
  }
  return "reference";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::Reference, Mode::Series, Mode::Extraordinary, Mode::Direct, Mode::Sweep})
    if (name == to_string(m))
      return m;
  throw ValidationError(fmt::format(
      "config: unknown mode '{}' (expected reference, series, extraordinary, direct or sweep)", name));
}

std::vector<double> sweep_points(const SweepSpec& spec) {
  if (!(spec.step > 0.0) || !std::isfinite(spec.start) || !std::isfinite(spec.stop))
    throw ValidationError("sweep: step must be positive and the range finite");
  if (spec.stop < spec.start)
    throw ValidationError("sweep: stop lies below start");
  const double span = (spec.stop - spec.start) / spec.step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  const double intervals = static_cast<double>(count - 1);
  double last = spec.start + intervals * spec.step;
  if (std::abs(last - spec.stop) <= 1e-9 * spec.step)
    last = spec.stop;
  // Weighted form keeps decimal grids (e.g. -2:0.1:2) on the nearest doubles.
  std::vector<double> points(count);
  points[0] = spec.start;
  for (std::size_t k = 1; k < count; ++k) {
    const double t = static_cast<double>(k);
    points[k] = (spec.start * (intervals - t) + last * t) / intervals;
  }
  return points;
}

ExperimentConfig default_config() {
  ExperimentConfig config;
  if (const char* dir = std::getenv(output_dir_env); dir != nullptr && *dir != '\0')
    config.out_dir = dir;
  return config;
}

std::vector<std::string> validate(const ExperimentConfig& config) {
  config.params.validate();
  if (config.grid_size < Grid::min_nodes || config.grid_size % 2 == 0)
    throw ValidationError(fmt::format("config: grid must be odd and >= {}, got {}", Grid::min_nodes, config.grid_size));
  if (config.n_max < 1 || config.n_max > series_max_order)
    throw ValidationError(fmt::format("config: n_max must lie in [1, {}], got {}", series_max_order, config.n_max));
  if (!(config.tol >= 1e-12) || !std::isfinite(config.tol))
    throw ValidationError(fmt::format("config: tol must be finite and >= 1e-12, got {}", config.tol));
  if (config.out_dir.empty())
    throw ValidationError("config: output directory is empty");

  std::vector<std::string> warnings;
  auto check_mu = [&](double mu) {
    if (!(mu > -2.0 && mu < 2.0))
      warnings.push_back(fmt::format("mu = {} outside the studied range -2 < mu < 2", mu));
  };
  if (config.params.nu > 10.0)
    warnings.push_back(fmt::format("nu = {} outside the studied range 0 < nu <= 10", config.params.nu));
  if (config.mode == Mode::Sweep) {
    if (config.sweep.parameter != "mu")
      throw ValidationError(fmt::format("config: only mu can be swept, got '{}'", config.sweep.parameter));
    const auto points = sweep_points(config.sweep);
    check_mu(points.front());
    check_mu(points.back());
  } else {
    check_mu(config.params.mu);
  }
  return warnings;
}

ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base) {
  ExperimentConfig c = std::move(base);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError(fmt::format("config line {}: expected key = value", line_no));
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ValidationError(fmt::format("config line {}: empty value for {}", line_no, key));

    if (key == "case") {
      const long which = parse_integer(value, key);
      if (which == 1)
        c.params = cases::type_a;
      else if (which == 2)
        c.params = cases::type_b;
      else
        throw ValidationError(fmt::format("config line {}: case must be 1 or 2", line_no));
    } else if (key == "sigma") {
      c.params.sigma = parse_real(value, key);
    } else if (key == "tau") {
      c.params.tau = parse_real(value, key);
    } else if (key == "nu") {
      c.params.nu = parse_real(value, key);
    } else if (key == "mu") {
      c.params.mu = parse_real(value, key);
    } else if (key == "grid") {
      const long n = parse_integer(value, key);
      if (n < 0)
        throw ValidationError(fmt::format("config line {}: grid must be positive", line_no));
      c.grid_size = static_cast<std::size_t>(n);
    } else if (key == "n_max") {
      c.n_max = static_cast<int>(parse_integer(value, key));
    } else if (key == "tol") {
      c.tol = parse_real(value, key);
    } else if (key == "mode") {
      c.mode = parse_mode(value);
    } else if (key == "out") {
      c.out_dir = std::string(value);
    } else if (key == "workers") {
      const long w = parse_integer(value, key);
      if (w < 0)
        throw ValidationError(fmt::format("config line {}: workers must be >= 0", line_no));
      c.workers = static_cast<unsigned>(w);
    } else if (key == "sweep_parameter") {
      c.sweep.parameter = std::string(value);
    } else if (key == "sweep_start") {
      c.sweep.start = parse_real(value, key);
    } else if (key == "sweep_stop") {
      c.sweep.stop = parse_real(value, key);
    } else if (key == "sweep_step") {
      c.sweep.step = parse_real(value, key);
    } else {
      throw ValidationError(fmt::format("config line {}: unknown key '{}'", line_no, key));
    }
  }
  return c;
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError(fmt::format("config: cannot read '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), std::move(base));
}

} // namespace pii
