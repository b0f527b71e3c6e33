#include "pii/mesh.hpp"

#include "pii/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pii {

Grid::Grid(std::size_t nodes) {
  if (nodes < min_nodes || nodes % 2 == 0)
    throw ContractError("Grid: node count must be odd and >= 257, got " + std::to_string(nodes));
  auto data = std::make_shared<Data>();
  const std::size_t panels = nodes - 1;
  data->spacing = 1.0 / static_cast<double>(panels);
  data->nodes.resize(nodes);
  data->weights.resize(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    data->nodes[k] = static_cast<double>(k) / static_cast<double>(panels);
    data->weights[k] = (k % 2 == 0 ? 2.0 : 4.0) * data->spacing / 3.0;
  }
  data->nodes.back() = 1.0;
  data->weights.front() = data->weights.back() = data->spacing / 3.0;
  data_ = std::move(data);
}

GridFunction::GridFunction(Grid g, std::vector<double> v, std::vector<double> d)
    : grid(std::move(g)), values(std::move(v)), derivs(std::move(d)) {
  if (values.size() != grid.size() || derivs.size() != grid.size())
    throw ContractError("GridFunction: values/derivs must have one entry per node");
}

namespace {

void require_size(std::size_t n, const Grid& grid, const char* who) {
  if (n != grid.size())
    throw ContractError(std::string(who) + ": sample count " + std::to_string(n) + " does not match grid size " +
                        std::to_string(grid.size()));
}

} // namespace

std::vector<double> cumulative_integral(std::span<const double> f, const Grid& grid) {
  require_size(f.size(), grid, "cumulative_integral");
  const std::size_t n = f.size();
  const double h = grid.spacing();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 2; k < n; k += 2)
    out[k] = out[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
  for (std::size_t k = 1; k < n; k += 2) {
    if (k + 2 < n)
      out[k] = out[k - 1] + h / 24.0 * (9.0 * f[k - 1] + 19.0 * f[k] - 5.0 * f[k + 1] + f[k + 2]);
    else
      out[k] = out[k - 1] + h / 24.0 * (-f[k - 2] + 13.0 * f[k - 1] + 13.0 * f[k] - f[k + 1]);
  }
  return out;
}

double integral(std::span<const double> f, const Grid& grid) {
  require_size(f.size(), grid, "integral");
  const auto w = grid.weights();
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    s += w[k] * f[k];
  return s;
}

double max_abs_combined(const GridFunction& f, const GridFunction& g) {
  if (!f.grid.same_as(g.grid) || f.size() != g.size())
    throw ContractError("max_abs_combined: functions live on different grids");
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    worst = std::max(worst, std::abs(f.values[k] - g.values[k]) + std::abs(f.derivs[k] - g.derivs[k]));
  return worst;
}

std::vector<double> derivative4(std::span<const double> f, const Grid& grid) {
  require_size(f.size(), grid, "derivative4");
  const std::size_t n = f.size();
  const double c = 1.0 / (12.0 * grid.spacing());
  std::vector<double> d(n);
  for (std::size_t k = 2; k + 2 < n; ++k)
    d[k] = c * (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]);
  d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  const std::size_t m = n - 1;
  d[m] = -c * (-25.0 * f[m] + 48.0 * f[m - 1] - 36.0 * f[m - 2] + 16.0 * f[m - 3] - 3.0 * f[m - 4]);
  d[m - 1] = -c * (-3.0 * f[m] - 10.0 * f[m - 1] + 18.0 * f[m - 2] - 6.0 * f[m - 3] + f[m - 4]);
  return d;
}

std::vector<double> second_derivative4(std::span<const double> f, const Grid& grid) {
  require_size(f.size(), grid, "second_derivative4");
  const std::size_t n = f.size();
  const double h = grid.spacing();
  const double c = 1.0 / (12.0 * h * h);
  std::vector<double> d(n);
  for (std::size_t k = 2; k + 2 < n; ++k)
    d[k] = c * (-f[k - 2] + 16.0 * f[k - 1] - 30.0 * f[k] + 16.0 * f[k + 1] - f[k + 2]);
  auto one_sided = [&](auto at, std::size_t k0, std::size_t k1) {
    d[k0] = c * (45.0 * at(0) - 154.0 * at(1) + 214.0 * at(2) - 156.0 * at(3) + 61.0 * at(4) - 10.0 * at(5));
    d[k1] = c * (10.0 * at(0) - 15.0 * at(1) - 4.0 * at(2) + 14.0 * at(3) - 6.0 * at(4) + at(5));
  };
  one_sided([&](std::size_t j) { return f[j]; }, 0, 1);
  one_sided([&](std::size_t j) { return f[n - 1 - j]; }, n - 1, n - 2);
  return d;
}

std::vector<double> second_derivative2(std::span<const double> f, double spacing) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  const double c = 1.0 / (spacing * spacing);
  for (std::size_t k = 1; k + 1 < n; ++k)
    d[k] = c * (f[k - 1] - 2.0 * f[k] + f[k + 1]);
  return d;
}

} // namespace pii
