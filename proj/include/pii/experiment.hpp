#pragma once

#include "pii/config.hpp"
#include "pii/extraordinary.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pii {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_solver_failure = 3;
inline constexpr int exit_partial_sweep = 4;

/// One sweep point. Failed points keep NaN data and the failure message.
struct SweepRow {
  double mu = 0.0;
  PiiInstance instance;
  double e0 = 0.0;
  double e1 = 0.0;
  bool converged = false;
  std::string failure;
};

/// Fresh reference solve and conversion for every point of config.sweep,
/// spread over config.workers threads. Rows come back in sweep order and do
/// not depend on the number of workers. Never throws for a failed point.
std::vector<SweepRow> sweep_mu(const ExperimentConfig& config);

struct RunOutcome {
  int exit_code = exit_ok;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// Validates the config, runs the selected mode and writes its CSV files into
/// config.out_dir (created if missing):
///
///   reference      reference.csv
///   series         reference.csv, series.csv, term_profiles.csv
///   extraordinary  reference.csv, abc_sequence.csv, y_profiles.csv
///   direct         reference.csv, direct.csv
///   sweep          sweep.csv
///
/// On failure a JSON error record goes to err and to out_dir/error.json, and
/// the exit code says what went wrong. Library errors do not escape.
RunOutcome run(const ExperimentConfig& config, std::ostream& err);

} // namespace pii
