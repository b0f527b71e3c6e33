#include "pii/config.hpp"
#include "pii/csv.hpp"
#include "pii/error.hpp"
#include "pii/experiment.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace pii;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const char* root = std::getenv("PII_TEST_TMP");
  fs::path dir = fs::path(root ? root : "cli_runs") / name;
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    lines.push_back(line);
  return lines;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Data rows: everything after the header line that follows the '#' block.
std::vector<std::vector<double>> data_rows(const fs::path& path) {
  std::vector<std::vector<double>> rows;
  bool header_seen = false;
  for (const auto& line : read_lines(path)) {
    if (line.empty() || line[0] == '#')
      continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream fields(line);
    for (std::string f; std::getline(fields, f, ',');)
      row.push_back(std::strtod(f.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

std::string header_of(const fs::path& path) {
  for (const auto& line : read_lines(path))
    if (!line.empty() && line[0] != '#')
      return line;
  return {};
}

ExperimentConfig small_config(Mode mode, const fs::path& out) {
  ExperimentConfig c;
  c.mode = mode;
  c.out_dir = out;
  c.grid_size = 513;
  c.workers = 2;
  return c;
}

} // namespace

TEST_CASE("config text overrides") {
  const auto c = parse_config_text("# comment\n\ncase = 2\n grid = 1025 \nn_max=40\nmode = sweep\nsweep_step = +0.25\n"
                                   "tol = 1e-9\nout = somewhere\n",
                                   ExperimentConfig{});
  CHECK(c.params.nu == cases::type_b.nu);
  CHECK(c.params.mu == cases::type_b.mu);
  CHECK(c.grid_size == 1025);
  CHECK(c.n_max == 40);
  CHECK(c.mode == Mode::Sweep);
  CHECK(c.sweep.step == 0.25);
  CHECK(c.tol == 1e-9);
  CHECK(c.out_dir == fs::path("somewhere"));

  const auto d = parse_config_text("case = 1\nmu = 0.5\n", ExperimentConfig{});
  CHECK(d.params.nu == cases::type_a.nu);
  CHECK(d.params.mu == 0.5);
}

TEST_CASE("config text errors name the line") {
  try {
    parse_config_text("sigma = 0.3\nbogus = 1\n", ExperimentConfig{});
    FAIL("unknown key accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("nu = fast\n", ExperimentConfig{}), ValidationError);
  CHECK_THROWS_AS(parse_config_text("grid = 12x\n", ExperimentConfig{}), ValidationError);
  CHECK_THROWS_AS(parse_config_text("mode = plot\n", ExperimentConfig{}), ValidationError);
  CHECK_THROWS_AS(parse_config_text("case = 3\n", ExperimentConfig{}), ValidationError);
  CHECK_THROWS_AS(parse_config_text("just words\n", ExperimentConfig{}), ValidationError);
}

TEST_CASE("mode names round trip") {
  for (Mode m : {Mode::Reference, Mode::Series, Mode::Extraordinary, Mode::Direct, Mode::Sweep})
    CHECK(parse_mode(to_string(m)) == m);
  CHECK_THROWS_AS(parse_mode("Reference"), ValidationError);
}

TEST_CASE("hard limits and soft warnings") {
  ExperimentConfig c;
  c.params.mu = 1.0;
  CHECK(validate(c).empty());

  auto rejects = [](auto edit) {
    ExperimentConfig bad;
    edit(bad);
    CHECK_THROWS_AS(validate(bad), ValidationError);
  };
  rejects([](ExperimentConfig& b) { b.grid_size = 2048; });
  rejects([](ExperimentConfig& b) { b.grid_size = 129; });
  rejects([](ExperimentConfig& b) { b.n_max = 0; });
  rejects([](ExperimentConfig& b) { b.n_max = 501; });
  rejects([](ExperimentConfig& b) { b.tol = 1e-13; });
  rejects([](ExperimentConfig& b) { b.params.sigma = 1.0; });
  rejects([](ExperimentConfig& b) { b.params.tau = -1.0; });
  rejects([](ExperimentConfig& b) { b.params.nu = 0.0; });
  rejects([](ExperimentConfig& b) {
    b.mode = Mode::Sweep;
    b.sweep.parameter = "nu";
  });
  rejects([](ExperimentConfig& b) {
    b.mode = Mode::Sweep;
    b.sweep.step = 0.0;
  });
  rejects([](ExperimentConfig& b) {
    b.mode = Mode::Sweep;
    b.sweep.stop = -3.0;
  });

  c.params.nu = 12.0;
  c.params.mu = 2.5;
  CHECK(validate(c).size() == 2);
}

TEST_CASE("sweep points") {
  const auto pts = sweep_points(SweepSpec{});
  REQUIRE(pts.size() == 41);
  CHECK(pts.front() == -2.0);
  CHECK(pts.back() == 2.0);
  CHECK(pts[20] == 0.0);
  for (std::size_t k = 1; k < pts.size(); ++k)
    CHECK(pts[k] - pts[k - 1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(sweep_points({"mu", 0.0, 1.0, 0.3}).size() == 4);
}

TEST_CASE("output directory from the environment") {
  ::setenv(output_dir_env, "from-env", 1);
  CHECK(default_config().out_dir == fs::path("from-env"));
  ::unsetenv(output_dir_env);
  CHECK(default_config().out_dir == fs::path("out"));
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.1, -1.8999999999999999, 4.180484151370001, 1e-300, 123456789.0})
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(0.0) == "0");
}

TEST_CASE("reference mode files") {
  const auto out = scratch("reference");
  std::ostringstream err;
  const auto outcome = run(small_config(Mode::Reference, out), err);
  CHECK(outcome.exit_code == exit_ok);
  CHECK(err.str().empty());
  REQUIRE(fs::exists(out / "reference.csv"));
  CHECK(header_of(out / "reference.csv") == "x,E,Eprime");
  const auto rows = data_rows(out / "reference.csv");
  REQUIRE(rows.size() == 513);
  CHECK(rows.front()[0] == 0.0);
  CHECK(rows.back()[0] == 1.0);
  CHECK(std::abs(rows.front()[1] - 4.180) <= 1e-3);
  CHECK_FALSE(fs::exists(out / "error.json"));

  bool has_type = false;
  for (const auto& line : read_lines(out / "reference.csv"))
    has_type = has_type || line == "# type=TypeA";
  CHECK(has_type);
}

TEST_CASE("series and direct mode files") {
  const auto out = scratch("series");
  std::ostringstream err;
  auto config = small_config(Mode::Series, out);
  config.n_max = 12;
  CHECK(run(config, err).exit_code == exit_ok);
  CHECK(header_of(out / "series.csv") == "n,log10_delta");
  CHECK(data_rows(out / "series.csv").size() == 12);
  CHECK(header_of(out / "term_profiles.csv") == "n,x,En,Enprime");
  CHECK(data_rows(out / "term_profiles.csv").size() == 12 * 513);

  config.mode = Mode::Direct;
  config.params = cases::type_b;
  CHECK(run(config, err).exit_code == exit_ok);
  CHECK(header_of(out / "direct.csv") == "n,sup_discrepancy,verdict");
  const auto lines = read_lines(out / "direct.csv");
  CHECK(lines.size() == 1 + 12);
}

TEST_CASE("extraordinary mode reaches the small-solution constants") {
  const auto out = scratch("extraordinary");
  std::ostringstream err;
  auto config = small_config(Mode::Extraordinary, out);
  config.params = cases::type_b;
  config.n_max = 20;
  CHECK(run(config, err).exit_code == exit_ok);
  CHECK(header_of(out / "abc_sequence.csv") == "n,a_n,b_n,C_n,beta_n,gamma_n,valid");
  const auto rows = data_rows(out / "abc_sequence.csv");
  REQUIRE(rows.size() == 20);
  const auto& last = rows.back();
  CHECK(last[0] == 20.0);
  CHECK(std::abs(last[1] - 1.645) <= 1e-3);
  CHECK(std::abs(last[2] - 3.554) <= 1e-3);
  CHECK(std::abs(last[3] - 0.714) <= 1e-3);
  CHECK(last[6] == 1.0);
  CHECK(header_of(out / "y_profiles.csv") == "n,z,y");
  CHECK(data_rows(out / "y_profiles.csv").size() == 21 * 513);
}

TEST_CASE("sweep output does not depend on the worker count") {
  auto config = small_config(Mode::Sweep, scratch("sweep1"));
  config.sweep = {"mu", -1.0, 1.0, 0.25};
  config.workers = 1;
  std::ostringstream err;
  CHECK(run(config, err).exit_code == exit_ok);
  const auto one = read_all(config.out_dir / "sweep.csv");

  config.out_dir = scratch("sweep4");
  config.workers = 4;
  CHECK(run(config, err).exit_code == exit_ok);
  CHECK(read_all(config.out_dir / "sweep.csv") == one);
  CHECK(header_of(config.out_dir / "sweep.csv") == "mu,a,b,C,e0,e1,converged");
  CHECK(data_rows(config.out_dir / "sweep.csv").size() == 9);
}

TEST_CASE("solver failure record") {
  const auto out = scratch("solver_failure");
  auto config = small_config(Mode::Reference, out);
  config.tol = 1e-12;
  std::ostringstream err;
  const auto outcome = run(config, err);
  CHECK(outcome.exit_code == exit_solver_failure);
  REQUIRE(fs::exists(out / "error.json"));
  const auto record = nlohmann::json::parse(read_all(out / "error.json"));
  CHECK(record["status"] == "error");
  CHECK(record["exit_code"] == exit_solver_failure);
  CHECK(record["stage"] == "reference");
  CHECK(record["mode"] == "reference");
  CHECK(record.contains("last_residual"));
  CHECK(record["params"]["nu"] == 3.5);
  CHECK(nlohmann::json::parse(err.str()) == record);

  // A later successful run clears the stale record.
  config.tol = 1e-8;
  CHECK(run(config, err).exit_code == exit_ok);
  CHECK_FALSE(fs::exists(out / "error.json"));
}

TEST_CASE("partial sweep record") {
  const auto out = scratch("partial_sweep");
  auto config = small_config(Mode::Sweep, out);
  config.sweep = {"mu", -0.1, 0.1, 0.1};
  config.tol = 1e-12;
  std::ostringstream err;
  CHECK(run(config, err).exit_code == exit_partial_sweep);
  const auto record = nlohmann::json::parse(read_all(out / "error.json"));
  CHECK(record["exit_code"] == exit_partial_sweep);
  CHECK(record["mode"] == "sweep");
  REQUIRE(fs::exists(out / "sweep.csv"));
  const auto rows = data_rows(out / "sweep.csv");
  REQUIRE(rows.size() == 3);
  // mu = 0 has the exact zero solution and needs no Newton step.
  CHECK(rows[1][6] == 1.0);
  CHECK(std::isnan(rows[0][1]));
}

TEST_CASE("invalid config record") {
  const auto out = scratch("bad_config");
  auto config = small_config(Mode::Reference, out);
  config.grid_size = 1024;
  std::ostringstream err;
  CHECK(run(config, err).exit_code == exit_config_error);
  const auto record = nlohmann::json::parse(read_all(out / "error.json"));
  CHECK(record["kind"] == "validation");
  CHECK(record["stage"] == "config");
  CHECK_FALSE(fs::exists(out / "reference.csv"));
}
