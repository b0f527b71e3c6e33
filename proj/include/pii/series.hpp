#pragma once

#include "pii/mesh.hpp"
#include "pii/parameters.hpp"
#include "pii/reference_bvp.hpp"
#include "pii/specfun.hpp"
#include "pii/variation.hpp"

#include <span>
#include <vector>

namespace pii {

/// One order E_n of the mu-expansion together with its boundary constants.
struct SeriesTerm {
  int order = 0;
  GridFunction profile;
  double end0 = 0.0; ///< E_n(0)
  double end1 = 0.0; ///< E_n(1)
  double d_a = 0.0;
  double d_b = 0.0;
};

/// Maximum order accepted by extend_series.
inline constexpr int series_max_order = 500;

/// Terms E_1 .. E_n of the expansion E = sum_k eps^k E_k (mu -> eps mu,
/// applied to E(0) and E(1) as well), plus running partial sums at eps = 1.
///
/// Each order solves nu E_n'' = (1 - sigma + 2 sigma x) E_n + R_n with
/// Neumann conditions, where R_1 = -2 mu and for n >= 2
///
///   R_n = (nu/2) sum_{m=2}^{n-1} [Q_m + (P0_m - P1_m) x - P0_m] E_{n-m}
///         + (nu tau / 2) (P0_n - P1_n),
///   Q_m  = sum_{i+j=m} E_i E_j,
///   P0_m = sum_{i+j=m} E_i(0) E_j(0),   P1_m = sum_{i+j=m} E_i(1) E_j(1).
///
/// Q_m, P0_m and P1_m are cached, so order n costs O(n) grid passes.
class SeriesState {
public:
  SeriesState(const Parameters& params, const Grid& grid);

  const Parameters& params() const { return params_; }
  const Grid& grid() const { return grid_; }
  const BasisTable& basis() const { return table_; }

  int order() const { return static_cast<int>(terms_.size()); }
  std::span<const SeriesTerm> terms() const { return terms_; }
  const SeriesTerm& term(int n) const;

  /// E^(n) = E_1 + ... + E_n with derivatives; requires 1 <= n <= order().
  const GridFunction& partial_sum(int n) const;
  double partial_end0(int n) const { return partial_sum(n).front(); }
  double partial_end1(int n) const { return partial_sum(n).back(); }

  /// R_n on the grid; requires orders 1 .. n-1 to be present.
  std::vector<double> rhs(int n) const;

  /// Appends orders until order() == up_to (no-op if already there).
  void extend(int up_to);

private:
  Parameters params_;
  Grid grid_;
  BasisTable table_;
  std::vector<SeriesTerm> terms_;
  std::vector<GridFunction> partial_;
  // Index m holds the pair sums for i + j = m (entries 0, 1 unused).
  std::vector<std::vector<double>> pair_products_;
  std::vector<double> pair_end0_, pair_end1_;

  void update_pair_sums(int m);
};

/// R_n for the current state.
std::vector<double> rhs_term(const SeriesState& state, int n);

/// Solves one order given its forcing R_n.
SeriesTerm solve_term(const Parameters& params, const ScaledAiryBasis& basis, std::span<const double> rn,
                      const Grid& grid);
SeriesTerm solve_term(const Parameters& params, const BasisTable& table, std::span<const double> rn, int order = 0);

/// Returns a copy of state extended to up_to orders. Throws ContractError if
/// up_to is outside [1, 500].
SeriesState extend_series(SeriesState state, int up_to);

/// max_x |E^(n) - E| + |E^(n)' - E'|.
double delta_n(const SeriesState& state, const ReferenceSolution& reference, int n);

/// nu E_n'' - (1 - sigma + 2 sigma x) E_n - R_n in max norm, with E_n'' from
/// fourth-order differences of the sampled derivative E_n'.
double term_residual(const Parameters& params, const SeriesTerm& term, std::span<const double> rn);

} // namespace pii
