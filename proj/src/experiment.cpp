#include "pii/experiment.hpp"

#include "pii/csv.hpp"
#include "pii/direct.hpp"
#include "pii/error.hpp"
#include "pii/reference_bvp.hpp"
#include "pii/series.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

namespace pii {

namespace {

using nlohmann::json;

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

json params_json(const Parameters& p) {
  return {{"sigma", p.sigma}, {"tau", p.tau}, {"nu", p.nu}, {"mu", p.mu}};
}

// Failure while running one mode; carries the stage for the error record.
struct StageFailure {
  std::string stage;
  std::string kind;
  std::string message;
  int exit_code;
  json extra = json::object();
};

std::string_view error_kind(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e))
    return "validation";
  if (dynamic_cast<const ConvergenceError*>(&e))
    return "convergence";
  if (dynamic_cast<const ClassificationError*>(&e))
    return "classification";
  if (dynamic_cast<const DegenerateBasisError*>(&e))
    return "degenerate_basis";
  if (dynamic_cast<const ConversionError*>(&e))
    return "conversion";
  if (dynamic_cast<const DomainError*>(&e))
    return "domain";
  if (dynamic_cast<const ContractError*>(&e))
    return "contract";
  return "io";
}

class Runner {
public:
  Runner(const ExperimentConfig& config, RunOutcome& outcome)
      : config_(config), outcome_(outcome), grid_(config.grid_size) {}

  void execute() {
    switch (config_.mode) {
    case Mode::Reference:
      write_reference(reference());
      break;
    case Mode::Series:
      run_series();
      break;
    case Mode::Extraordinary:
      run_extraordinary();
      break;
    case Mode::Direct:
      run_direct();
      break;
    case Mode::Sweep:
      run_sweep();
      break;
    }
  }

  const std::string& stage() const { return stage_; }

private:
  const ExperimentConfig& config_;
  RunOutcome& outcome_;
  Grid grid_;
  std::string stage_ = "setup";

  std::filesystem::path open_path(std::string_view name) {
    outcome_.files.push_back(config_.out_dir / name);
    return outcome_.files.back();
  }

  ReferenceSolution reference() {
    stage_ = "reference";
    return solve_reference(config_.params, grid_, config_.tol);
  }

  SeriesState series() {
    stage_ = "series";
    SeriesState state(config_.params, grid_);
    state.extend(config_.n_max);
    return state;
  }

  void write_reference(const ReferenceSolution& ref) {
    stage_ = "output";
    CsvWriter csv(open_path("reference.csv"));
    csv.comment("sigma", ref.params.sigma);
    csv.comment("tau", ref.params.tau);
    csv.comment("nu", ref.params.nu);
    csv.comment("mu", ref.params.mu);
    csv.comment("e0", ref.e0);
    csv.comment("e1", ref.e1);
    csv.comment("type", to_string(ref.type));
    csv.comment("residual", ref.residual_norm);
    csv.header({"x", "E", "Eprime"});
    for (std::size_t k = 0; k < grid_.size(); ++k)
      csv.row(grid_[k], ref.profile.values[k], ref.profile.derivs[k]);
    csv.close();
  }

  void run_series() {
    const auto ref = reference();
    write_reference(ref);
    const auto state = series();
    stage_ = "output";
    CsvWriter deltas(open_path("series.csv"));
    deltas.header({"n", "log10_delta"});
    for (int n = 1; n <= state.order(); ++n)
      deltas.row(n, std::log10(delta_n(state, ref, n)));
    deltas.close();

    CsvWriter terms(open_path("term_profiles.csv"));
    terms.header({"n", "x", "En", "Enprime"});
    for (const SeriesTerm& t : state.terms())
      for (std::size_t k = 0; k < grid_.size(); ++k)
        terms.row(t.order, grid_[k], t.profile.values[k], t.profile.derivs[k]);
    terms.close();
  }

  void run_extraordinary() {
    const auto ref = reference();
    write_reference(ref);
    stage_ = "conversion";
    const PiiInstance inst = convert(ref.e0, ref.e1, ref.params);
    const PiiProfile y = convert_profile(ref.profile, inst);
    const auto state = series();
    stage_ = "extraordinary";
    const auto seq = extraordinary_sequence(state, config_.n_max);

    stage_ = "output";
    CsvWriter abc(open_path("abc_sequence.csv"));
    abc.header({"n", "a_n", "b_n", "C_n", "beta_n", "gamma_n", "valid"});
    for (const auto& e : seq)
      abc.row(e.order, e.instance.a, e.instance.b, e.instance.c, e.instance.beta, e.instance.gamma, e.valid ? 1 : 0);
    abc.close();

    CsvWriter profiles(open_path("y_profiles.csv"));
    profiles.header({"n", "z", "y"});
    for (std::size_t k = 0; k < y.size(); ++k)
      profiles.row(0, y.z[k], y.y[k]);
    for (const auto& e : seq)
      for (std::size_t k = 0; k < grid_.size(); ++k) {
        if (e.valid)
          profiles.row(e.order, e.profile.z[k], e.profile.y[k]);
        else
          profiles.row(e.order, nan_value, nan_value);
      }
    profiles.close();
  }

  void run_direct() {
    const auto ref = reference();
    write_reference(ref);
    stage_ = "conversion";
    const PiiInstance inst = convert(ref.e0, ref.e1, ref.params);
    const PiiProfile y = convert_profile(ref.profile, inst);
    stage_ = "direct";
    DirectSeriesState state(inst, grid_);
    const DirectReport report = direct_partial_sums(state, y, config_.n_max);

    stage_ = "output";
    CsvWriter csv(open_path("direct.csv"));
    csv.header({"n", "sup_discrepancy", "verdict"});
    for (std::size_t k = 0; k < report.discrepancies.size(); ++k)
      csv.row(static_cast<int>(k + 1), report.discrepancies[k], to_string(report.running[k]));
    csv.close();
  }

  void run_sweep() {
    stage_ = "sweep";
    const auto rows = sweep_mu(config_);
    stage_ = "output";
    CsvWriter csv(open_path("sweep.csv"));
    csv.header({"mu", "a", "b", "C", "e0", "e1", "converged"});
    json failed = json::array();
    for (const auto& r : rows) {
      csv.row(r.mu, r.instance.a, r.instance.b, r.instance.c, r.e0, r.e1, r.converged ? 1 : 0);
      if (!r.converged)
        failed.push_back({{"mu", r.mu}, {"message", r.failure}});
    }
    csv.close();
    if (!failed.empty())
      throw StageFailure{"sweep", "partial_sweep",
                         fmt::format("{} of {} sweep points failed", failed.size(), rows.size()),
                         exit_partial_sweep, {{"failed_points", failed}}};
  }
};

void report_failure(const ExperimentConfig& config, const StageFailure& failure, std::ostream& err) {
  json record = {{"status", "error"},
                 {"exit_code", failure.exit_code},
                 {"stage", failure.stage},
                 {"kind", failure.kind},
                 {"message", failure.message},
                 {"mode", to_string(config.mode)},
                 {"params", params_json(config.params)}};
  record.update(failure.extra);
  const std::string text = record.dump(2);
  err << text << '\n';
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (!ec) {
    std::ofstream out(config.out_dir / "error.json", std::ios::binary);
    out << text << '\n';
  }
}

} // namespace

std::vector<SweepRow> sweep_mu(const ExperimentConfig& config) {
  const auto points = sweep_points(config.sweep);
  const Grid grid(config.grid_size);
  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      SweepRow& row = rows[k];
      row.mu = points[k];
      const Parameters params = config.params.with_mu(row.mu);
      try {
        const auto ref = solve_reference(params, grid, config.tol);
        row.instance = convert(ref.e0, ref.e1, params);
        row.e0 = ref.e0;
        row.e1 = ref.e1;
        row.converged = true;
      } catch (const std::exception& e) {
        row.instance = {nan_value, nan_value, nan_value, nan_value, nan_value};
        row.e0 = row.e1 = nan_value;
        row.failure = e.what();
      }
    }
  };

  unsigned width = config.workers != 0 ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  width = static_cast<unsigned>(std::min<std::size_t>(width, points.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < width; ++t)
    pool.emplace_back(worker);
  worker();
  return rows;
}

RunOutcome run(const ExperimentConfig& config, std::ostream& err) {
  RunOutcome outcome;
  try {
    outcome.warnings = validate(config);
  } catch (const std::exception& e) {
    outcome.exit_code = exit_config_error;
    report_failure(config, {"config", std::string(error_kind(e)), e.what(), exit_config_error}, err);
    return outcome;
  }

  Runner runner(config, outcome);
  try {
    std::filesystem::create_directories(config.out_dir);
    std::filesystem::remove(config.out_dir / "error.json");
    runner.execute();
  } catch (const StageFailure& failure) {
    outcome.exit_code = failure.exit_code;
    report_failure(config, failure, err);
  } catch (const ConvergenceError& e) {
    outcome.exit_code = exit_solver_failure;
    report_failure(config,
                   {runner.stage(), "convergence", e.what(), exit_solver_failure,
                    {{"last_residual", e.last_residual()}, {"at_mu", e.at_mu()}}},
                   err);
  } catch (const std::exception& e) {
    outcome.exit_code = exit_solver_failure;
    report_failure(config, {runner.stage(), std::string(error_kind(e)), e.what(), exit_solver_failure}, err);
  }
  return outcome;
}

} // namespace pii
