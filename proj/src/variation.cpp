#include "pii/variation.hpp"

#include "pii/error.hpp"

#include <cmath>

namespace pii {

BasisTable::BasisTable(const ScaledAiryBasis& basis_, const Grid& grid_)
    : basis(basis_), grid(grid_), a(grid_.size()), b(grid_.size()), a_prime(grid_.size()), b_prime(grid_.size()) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const BasisSample s = basis.sample(grid[k]);
    a[k] = s.a;
    b[k] = s.b;
    a_prime[k] = s.a_prime;
    b_prime[k] = s.b_prime;
  }
}

double BasisTable::neumann_determinant() const {
  return a_prime.back() * b_prime.front() - a_prime.front() * b_prime.back();
}

NeumannSolution solve_neumann(const BasisTable& table, double coef, std::span<const double> forcing) {
  const Grid& grid = table.grid;
  if (forcing.size() != grid.size())
    throw ContractError("solve_neumann: forcing is not sampled on the basis grid");
  const double det = table.neumann_determinant();
  if (!(std::abs(det) >= 1e-13))
    throw DegenerateBasisError("solve_neumann: Neumann determinant A'(1)B'(0) - A'(0)B'(1) is numerically zero");

  const std::size_t n = grid.size();
  std::vector<double> fb(n), fa(n);
  for (std::size_t k = 0; k < n; ++k) {
    fb[k] = forcing[k] * table.b[k];
    fa[k] = forcing[k] * table.a[k];
  }
  const auto int_fb = cumulative_integral(fb, grid);
  const auto int_fa = cumulative_integral(fa, grid);

  const double cw = coef * table.basis.wronskian;
  NeumannSolution out{GridFunction(grid)};
  out.d_a = table.b_prime.front() / (det * cw) *
            (table.a_prime.back() * int_fb.back() - table.b_prime.back() * int_fa.back());
  out.d_b = -table.a_prime.front() * out.d_a / table.b_prime.front();

  for (std::size_t k = 0; k < n; ++k) {
    out.profile.values[k] =
        -(table.a[k] * int_fb[k] - table.b[k] * int_fa[k]) / cw + out.d_a * table.a[k] + out.d_b * table.b[k];
    out.profile.derivs[k] = -(table.a_prime[k] * int_fb[k] - table.b_prime[k] * int_fa[k]) / cw +
                            out.d_a * table.a_prime[k] + out.d_b * table.b_prime[k];
  }
  return out;
}

} // namespace pii
