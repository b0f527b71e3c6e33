#pragma once

#include "pii/mesh.hpp"
#include "pii/parameters.hpp"

#include <cstddef>
#include <string_view>

namespace pii {

enum class SolutionType { TypeA, TypeB, Null };

std::string_view to_string(SolutionType type);

/// Converged numerical solution of
///
///   2 nu E'' = nu E^3 + {4 sigma + nu [E(0)^2 - E(1)^2]} x E
///              + {2 - 2 sigma - nu E(0)^2} E + nu tau [E(0)^2 - E(1)^2] - 4 mu,
///   E'(0) = 0 = E'(1),
///
/// sampled on the experiment grid.
struct ReferenceSolution {
  Parameters params;
  GridFunction profile;
  double e0 = 0.0;
  double e1 = 0.0;
  SolutionType type = SolutionType::Null;
  /// Scaled max-norm residual of the equation above at interior nodes; see
  /// equation_residual().
  double residual_norm = 0.0;
};

struct ReferenceOptions {
  double max_mu_step = 0.25;
  int max_halvings = 20;
  int max_newton_iterations = 60;
  double update_tol = 1e-12;
  /// Combine solutions on the grid and on the doubled mesh (Richardson); off
  /// leaves the plain second-order solution.
  bool extrapolate = true;
};

/// Solves the nonlocal boundary value problem by continuation in mu from the
/// exact zero solution, with damped Newton at each continuation point.
///
/// Throws ValidationError for bad parameters or tol < 1e-12, ConvergenceError
/// if Newton stalls, ClassificationError if the result is not of Type A/B.
ReferenceSolution solve_reference(const Parameters& params, const Grid& grid, double tol = 1e-8,
                                  const ReferenceOptions& options = {});

/// Type A: E > 0 and E' <= 0; Type B: E < 0 and E' >= 0; Null: E == 0.
/// Throws ClassificationError when neither pattern holds.
SolutionType classify_type(const ReferenceSolution& sol);
SolutionType classify_type(const GridFunction& profile);

/// Fewest panels of the sub-grid on which equation_residual differences.
inline constexpr std::size_t residual_min_panels = 512;

/// Residual of the equation with E'' from fourth-order differences, each node
/// divided by 1 + (sum of magnitudes of the terms on the right-hand side).
/// Evaluated at the interior nodes of the coarsest every-2^k-th-node sub-grid
/// with at least residual_min_panels panels. Endpoint values are taken from
/// the profile itself.
double equation_residual(const Parameters& params, const GridFunction& profile);

} // namespace pii
