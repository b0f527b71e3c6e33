#include "pii/series.hpp"

#include "pii/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pii {

SeriesState::SeriesState(const Parameters& params, const Grid& grid)
    : params_(params), grid_(grid), table_(scaled_basis(params), grid) {
  pair_products_.resize(2);
  pair_end0_.assign(2, 0.0);
  pair_end1_.assign(2, 0.0);
}

const SeriesTerm& SeriesState::term(int n) const {
  if (n < 1 || n > order())
    throw ContractError("SeriesState: order " + std::to_string(n) + " not computed");
  return terms_[static_cast<std::size_t>(n - 1)];
}

const GridFunction& SeriesState::partial_sum(int n) const {
  if (n < 1 || n > order())
    throw ContractError("SeriesState: partial sum " + std::to_string(n) + " not computed");
  return partial_[static_cast<std::size_t>(n - 1)];
}

void SeriesState::update_pair_sums(int m) {
  // Needs E_1 .. E_{m-1}.
  std::vector<double> q(grid_.size(), 0.0);
  double p0 = 0.0, p1 = 0.0;
  for (int i = 1; i <= m - i; ++i) {
    const SeriesTerm& ti = term(i);
    const SeriesTerm& tj = term(m - i);
    const double w = (i == m - i) ? 1.0 : 2.0;
    for (std::size_t k = 0; k < q.size(); ++k)
      q[k] += w * ti.profile.values[k] * tj.profile.values[k];
    p0 += w * ti.end0 * tj.end0;
    p1 += w * ti.end1 * tj.end1;
  }
  pair_products_.push_back(std::move(q));
  pair_end0_.push_back(p0);
  pair_end1_.push_back(p1);
}

std::vector<double> SeriesState::rhs(int n) const {
  if (n < 1)
    throw ContractError("rhs_term: order must be >= 1");
  if (n - 1 > order())
    throw ContractError("rhs_term: orders below " + std::to_string(n) + " are missing");
  const std::size_t size = grid_.size();
  if (n == 1)
    return std::vector<double>(size, -2.0 * params_.mu);

  const double half_nu = 0.5 * params_.nu;
  const double boundary = half_nu * params_.tau * (pair_end0_[n] - pair_end1_[n]);
  std::vector<double> r(size, boundary);
  for (int m = 2; m <= n - 1; ++m) {
    const auto& q = pair_products_[static_cast<std::size_t>(m)];
    const double jump = pair_end0_[m] - pair_end1_[m];
    const double p0 = pair_end0_[m];
    const auto& e = term(n - m).profile.values;
    for (std::size_t k = 0; k < size; ++k)
      r[k] += half_nu * (q[k] + jump * grid_[k] - p0) * e[k];
  }
  return r;
}

void SeriesState::extend(int up_to) {
  if (up_to < 1 || up_to > series_max_order)
    throw ContractError("extend_series: order must lie in [1, 500], got " + std::to_string(up_to));
  terms_.reserve(static_cast<std::size_t>(up_to));
  partial_.reserve(static_cast<std::size_t>(up_to));
  while (order() < up_to) {
    const int n = order() + 1;
    const auto rn = rhs(n);
    SeriesTerm t = solve_term(params_, table_, rn, n);
    if (partial_.empty()) {
      partial_.push_back(t.profile);
    } else {
      GridFunction sum = partial_.back();
      for (std::size_t k = 0; k < sum.size(); ++k) {
        sum.values[k] += t.profile.values[k];
        sum.derivs[k] += t.profile.derivs[k];
      }
      partial_.push_back(std::move(sum));
    }
    terms_.push_back(std::move(t));
    update_pair_sums(n + 1);
  }
}

std::vector<double> rhs_term(const SeriesState& state, int n) { return state.rhs(n); }

SeriesTerm solve_term(const Parameters& params, const BasisTable& table, std::span<const double> rn, int order) {
  NeumannSolution sol = solve_neumann(table, params.nu, rn);
  SeriesTerm t{order, std::move(sol.profile)};
  t.end0 = t.profile.front();
  t.end1 = t.profile.back();
  t.d_a = sol.d_a;
  t.d_b = sol.d_b;
  return t;
}

SeriesTerm solve_term(const Parameters& params, const ScaledAiryBasis& basis, std::span<const double> rn,
                      const Grid& grid) {
  return solve_term(params, BasisTable(basis, grid), rn);
}

SeriesState extend_series(SeriesState state, int up_to) {
  state.extend(up_to);
  return state;
}

double delta_n(const SeriesState& state, const ReferenceSolution& reference, int n) {
  return max_abs_combined(state.partial_sum(n), reference.profile);
}

double term_residual(const Parameters& params, const SeriesTerm& term, std::span<const double> rn) {
  const Grid& grid = term.profile.grid;
  if (rn.size() != grid.size())
    throw ContractError("term_residual: forcing size mismatch");
  // Differentiating E' once keeps roundoff at O(eps / h) instead of O(eps / h^2).
  const auto e2 = derivative4(term.profile.derivs, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double q = 1.0 - params.sigma + 2.0 * params.sigma * grid[k];
    worst = std::max(worst, std::abs(params.nu * e2[k] - q * term.profile.values[k] - rn[k]));
  }
  return worst;
}

} // namespace pii
