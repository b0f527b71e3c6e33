#pragma once

#include "pii/parameters.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pii {

enum class Mode { Reference, Series, Extraordinary, Direct, Sweep };

std::string_view to_string(Mode mode);
/// Throws ValidationError for an unknown name.
Mode parse_mode(std::string_view name);

/// Inclusive range of the swept parameter. Only mu can be swept.
struct SweepSpec {
  std::string parameter = "mu";
  double start = -2.0;
  double stop = 2.0;
  double step = 0.1;
};

/// Points start + k * step for k = 0 .. K with the last point snapped to stop
/// when within step * 1e-9 of it. Interior points are interpolated between
/// the ends, so every run yields the same values.
std::vector<double> sweep_points(const SweepSpec& spec);

/// Environment variable naming the default output directory.
inline constexpr const char* output_dir_env = "PII_OUTPUT_DIR";

struct ExperimentConfig {
  Parameters params = cases::type_a;
  std::size_t grid_size = 2049;
  int n_max = 60;
  double tol = 1e-8;
  Mode mode = Mode::Reference;
  SweepSpec sweep;
  std::filesystem::path out_dir = "out";
  unsigned workers = 0; ///< 0 = hardware concurrency
};

/// Defaults with out_dir taken from PII_OUTPUT_DIR when set.
ExperimentConfig default_config();

/// Checks hard limits and throws ValidationError on the first violation.
/// Returns soft warnings (parameters outside 0 < nu <= 10, -2 < mu < 2).
std::vector<std::string> validate(const ExperimentConfig& config);

/// Applies "key = value" lines on top of base. Blank lines and lines starting
/// with '#' are skipped. Keys: case, sigma, tau, nu, mu, grid, n_max, tol,
/// mode, out, workers, sweep_parameter, sweep_start, sweep_stop, sweep_step.
/// "case = 1" or "case = 2" loads the corresponding preset parameters.
/// Throws ValidationError naming the line for unknown keys or bad values.
ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base);

/// parse_config_text on the contents of a file.
ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base);

} // namespace pii
