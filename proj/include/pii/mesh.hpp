#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace pii {

/// Uniform mesh on [0, 1] with composite Simpson weights.
///
/// The node count is odd and at least 257. Copies share the same immutable
/// node storage, so passing a Grid by value is cheap.
class Grid {
public:
  static constexpr std::size_t default_nodes = 2049;
  static constexpr std::size_t min_nodes = 257;

  explicit Grid(std::size_t nodes = default_nodes);

  std::size_t size() const { return data_->nodes.size(); }
  double spacing() const { return data_->spacing; }
  double operator[](std::size_t k) const { return data_->nodes[k]; }
  std::span<const double> nodes() const { return data_->nodes; }
  std::span<const double> weights() const { return data_->weights; }

  /// Grid with spacing halved (2n - 1 nodes); node k here is node 2k there.
  Grid refined() const { return Grid(2 * size() - 1); }

  bool same_as(const Grid& other) const { return size() == other.size(); }

private:
  struct Data {
    std::vector<double> nodes;
    std::vector<double> weights;
    double spacing = 0.0;
  };
  std::shared_ptr<const Data> data_;
};

/// Values and first derivatives of a real function sampled on a Grid.
struct GridFunction {
  Grid grid;
  std::vector<double> values;
  std::vector<double> derivs;

  explicit GridFunction(Grid g) : grid(std::move(g)), values(grid.size(), 0.0), derivs(grid.size(), 0.0) {}
  GridFunction(Grid g, std::vector<double> v, std::vector<double> d);

  std::size_t size() const { return values.size(); }
  double front() const { return values.front(); }
  double back() const { return values.back(); }
};

/// Running integral F[k] = int_0^{x_k} f. Even nodes use composite Simpson;
/// odd nodes add the half panel from the interpolating cubic through four
/// neighbouring samples. Fourth order on smooth integrands, F[0] = 0 and
/// F[last] equals integral(f, grid).
std::vector<double> cumulative_integral(std::span<const double> f, const Grid& grid);

/// Composite Simpson integral over [0, 1].
double integral(std::span<const double> f, const Grid& grid);

/// max_k |f_k - g_k| + |f'_k - g'_k|.
double max_abs_combined(const GridFunction& f, const GridFunction& g);

/// Fourth-order first derivative (five-point stencils, one-sided near ends).
std::vector<double> derivative4(std::span<const double> f, const Grid& grid);

/// Fourth-order second derivative (five/six-point stencils, one-sided near ends).
std::vector<double> second_derivative4(std::span<const double> f, const Grid& grid);

/// Three-point central second derivative at interior nodes; ends are left 0.
std::vector<double> second_derivative2(std::span<const double> f, double spacing);

} // namespace pii
