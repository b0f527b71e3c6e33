#pragma once

#include "pii/extraordinary.hpp"
#include "pii/mesh.hpp"
#include "pii/variation.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace pii {

/// Ordinary perturbation of y'' = 2y^3 + zy + C about y = 0 with C -> eps C:
/// each order solves y_n'' - z y_n = S_n on [a, b] with Neumann conditions,
///   S_1 = C,   S_n = 2 sum_{i+j+k=n} y_i y_j y_k  (n >= 2).
/// The grid is the shared [0, 1] mesh mapped by z = a + (b - a) x.
class DirectSeriesState {
public:
  DirectSeriesState(const PiiInstance& instance, const Grid& grid);

  const PiiInstance& instance() const { return instance_; }
  const Grid& grid() const { return grid_; }
  int order() const { return static_cast<int>(terms_.size()); }

  /// y_n on the mapped grid, derivatives with respect to z.
  const PiiProfile& term(int n) const;
  /// y^(n) = y_1 + ... + y_n.
  const PiiProfile& partial_sum(int n) const;

  /// S_n; requires orders 1 .. n-1.
  std::vector<double> forcing(int n) const;

  void extend(int up_to);

private:
  PiiInstance instance_;
  Grid grid_;
  BasisTable table_;
  std::vector<PiiProfile> terms_;
  std::vector<PiiProfile> partial_;
  std::vector<std::vector<double>> pair_products_; // index m: sum_{i+j=m} y_i y_j

  PiiProfile solve_order(std::span<const double> forcing) const;
};

/// Computes order n (extending the state as needed) and returns it.
const PiiProfile& direct_term(DirectSeriesState& state, int n);

enum class DirectVerdict {
  Undecided,
  Converging, ///< sup discrepancy reached direct_converged_tol
  Divergent,  ///< growth detector fired or the partial sums overflowed
};

std::string_view to_string(DirectVerdict v);

inline constexpr double direct_converged_tol = 1e-6;
inline constexpr int direct_growth_window = 10;
inline constexpr double direct_growth_factor = 10.0;
inline constexpr int direct_order_cap = 60;

struct DirectReport {
  std::vector<double> discrepancies;  ///< index n-1: sup |y^(n) - y|
  std::vector<DirectVerdict> running; ///< verdict known after order n
  DirectVerdict verdict = DirectVerdict::Undecided;
  int decided_at = 0; ///< order at which the verdict was reached (0 if never)
  /// sup |y_m| over the last two computed orders; tiny values with a large
  /// discrepancy mean the partial sums settled on a different solution.
  double last_term_size = 0.0;
};

/// Verdict from the newest entry of d (sup discrepancies for orders 1 .. n):
/// Divergent if d.back() is non-finite or d is non-decreasing over the last
/// direct_growth_window steps while growing by direct_growth_factor,
/// Converging if d.back() <= direct_converged_tol, otherwise Undecided.
DirectVerdict assess_latest(std::span<const double> d);

/// Partial-sum discrepancies against a reference profile sampled on the same
/// mapped grid, for orders 1 .. min(up_to, direct_order_cap). The verdict is
/// the first decisive assess_latest() result; summation stops early once the
/// partial sums overflow.
DirectReport direct_partial_sums(DirectSeriesState& state, const PiiProfile& reference, int up_to);

/// max |2y^3| / |z y| and max |2y^3| / |C| over the nodes of a profile.
struct SizeRatios {
  double cubic_over_linear = 0.0;
  double cubic_over_constant = 0.0;
};

SizeRatios size_ratios(const PiiProfile& y, const PiiInstance& inst);

/// Residual of y_n'' - z y_n - S_n in max norm, y_n'' by fourth-order
/// differences of the sampled y_n'.
double direct_term_residual(const DirectSeriesState& state, int n);

} // namespace pii
