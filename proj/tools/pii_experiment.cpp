// Experiment runner: writes the CSV artifacts for one mode.
//
//   pii_experiment --mode series --case 2 --n-max 60 --out results/case2
//   pii_experiment --config runs/sweep_nu01.cfg --workers 4
//
// Settings are applied in order: defaults, config file, flags.

#include "pii/config.hpp"
#include "pii/error.hpp"
#include "pii/experiment.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
  CLI::App app{"Airy-series solver for the two-ion electrodiffusion problem and its Painleve II form"};

  std::optional<std::string> config_file, mode, out;
  std::optional<int> preset, n_max;
  std::optional<double> sigma, tau, nu, mu, tol, sweep_start, sweep_stop, sweep_step;
  std::optional<std::size_t> grid;
  std::optional<unsigned> workers;

  app.add_option("-c,--config", config_file, "key = value configuration file");
  app.add_option("--case", preset, "Preset parameters: 1 (Type A) or 2 (Type B)");
  app.add_option("--sigma", sigma);
  app.add_option("--tau", tau);
  app.add_option("--nu", nu);
  app.add_option("--mu", mu);
  app.add_option("--n-max", n_max, "Highest series order (1..500)");
  app.add_option("--grid", grid, "Odd node count >= 257");
  app.add_option("--tol", tol, "Reference residual tolerance (>= 1e-12)");
  app.add_option("--mode", mode, "reference | series | extraordinary | direct | sweep");
  app.add_option("--out", out, "Output directory (default: $PII_OUTPUT_DIR or ./out)");
  app.add_option("--sweep-start", sweep_start);
  app.add_option("--sweep-stop", sweep_stop);
  app.add_option("--sweep-step", sweep_step);
  app.add_option("--workers", workers, "Sweep threads (0 = all cores)");

  CLI11_PARSE(app, argc, argv);

  pii::ExperimentConfig config = pii::default_config();
  try {
    if (config_file)
      config = pii::load_config_file(*config_file, config);
    if (preset) {
      if (*preset != 1 && *preset != 2)
        throw pii::ValidationError("--case must be 1 or 2");
      config.params = *preset == 1 ? pii::cases::type_a : pii::cases::type_b;
    }
    if (sigma)
      config.params.sigma = *sigma;
    if (tau)
      config.params.tau = *tau;
    if (nu)
      config.params.nu = *nu;
    if (mu)
      config.params.mu = *mu;
    if (n_max)
      config.n_max = *n_max;
    if (grid)
      config.grid_size = *grid;
    if (tol)
      config.tol = *tol;
    if (mode)
      config.mode = pii::parse_mode(*mode);
    if (out)
      config.out_dir = *out;
    if (sweep_start)
      config.sweep.start = *sweep_start;
    if (sweep_stop)
      config.sweep.stop = *sweep_stop;
    if (sweep_step)
      config.sweep.step = *sweep_step;
    if (workers)
      config.workers = *workers;
  } catch (const pii::Error& e) {
    const nlohmann::json record = {{"status", "error"},
                                   {"exit_code", pii::exit_config_error},
                                   {"stage", "config"},
                                   {"kind", "validation"},
                                   {"message", e.what()}};
    std::cerr << record.dump(2) << '\n';
    return pii::exit_config_error;
  }

  const pii::RunOutcome outcome = pii::run(config, std::cerr);
  for (const auto& w : outcome.warnings)
    std::cerr << "warning: " << w << '\n';
  for (const auto& f : outcome.files)
    std::cout << f.string() << '\n';
  return outcome.exit_code;
}
