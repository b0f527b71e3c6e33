#pragma once

#include "pii/mesh.hpp"
#include "pii/specfun.hpp"

#include <span>
#include <vector>

namespace pii {

/// A(x), B(x), A'(x), B'(x) of a ScaledAiryBasis tabulated on a grid.
struct BasisTable {
  ScaledAiryBasis basis;
  Grid grid;
  std::vector<double> a, b, a_prime, b_prime;

  BasisTable(const ScaledAiryBasis& basis, const Grid& grid);

  /// A'(1) B'(0) - A'(0) B'(1), the Neumann boundary determinant.
  double neumann_determinant() const;
};

/// Solution of coef * u'' - q(x) u = forcing, u'(0) = 0 = u'(1), where A, B
/// span the homogeneous solutions (so A'' = q A / coef).
struct NeumannSolution {
  GridFunction profile;
  double d_a = 0.0;
  double d_b = 0.0;
};

/// Variation of parameters:
///   u = -(1 / (coef W)) { A int_0^x f B - B int_0^x f A } + d_a A + d_b B,
///   d_a = B'(0) / ([A'(1) B'(0) - A'(0) B'(1)] coef W)
///         * { A'(1) int_0^1 f B - B'(1) int_0^1 f A },
///   d_b = -A'(0) d_a / B'(0).
/// The derivative uses the same formula with A', B' in front of the running
/// integrals (the Leibniz boundary terms cancel).
///
/// Throws DegenerateBasisError if |A'(1)B'(0) - A'(0)B'(1)| < 1e-13 and
/// ContractError on a size mismatch.
NeumannSolution solve_neumann(const BasisTable& table, double coef, std::span<const double> forcing);

} // namespace pii
