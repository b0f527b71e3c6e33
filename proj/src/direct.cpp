#include "pii/direct.hpp"

#include "pii/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pii {

std::string_view to_string(DirectVerdict v) {
  switch (v) {
  case DirectVerdict::Undecided:
    return "undecided";
  case DirectVerdict::Converging:
    return "converging";
  case DirectVerdict::Divergent:
    return "divergent";
  }
  return "undecided";
}

DirectSeriesState::DirectSeriesState(const PiiInstance& instance, const Grid& grid)
    : instance_(instance), grid_(grid), table_(affine_basis(instance.a, instance.b), grid) {
  pair_products_.resize(2);
}

const PiiProfile& DirectSeriesState::term(int n) const {
  if (n < 1 || n > order())
    throw ContractError("DirectSeriesState: order " + std::to_string(n) + " not computed");
  return terms_[static_cast<std::size_t>(n - 1)];
}

const PiiProfile& DirectSeriesState::partial_sum(int n) const {
  if (n < 1 || n > order())
    throw ContractError("DirectSeriesState: partial sum " + std::to_string(n) + " not computed");
  return partial_[static_cast<std::size_t>(n - 1)];
}

std::vector<double> DirectSeriesState::forcing(int n) const {
  if (n < 1 || n - 1 > order())
    throw ContractError("direct forcing: lower orders missing for order " + std::to_string(n));
  if (n == 1)
    return std::vector<double>(grid_.size(), instance_.c);
  std::vector<double> s(grid_.size(), 0.0);
  for (int m = 2; m <= n - 1; ++m) {
    const auto& q = pair_products_[static_cast<std::size_t>(m)];
    const auto& y = term(n - m).y;
    for (std::size_t k = 0; k < s.size(); ++k)
      s[k] += 2.0 * q[k] * y[k];
  }
  return s;
}

PiiProfile DirectSeriesState::solve_order(std::span<const double> forcing) const {
  const double length = instance_.b - instance_.a;
  // In x: (1/L^2) y_xx - z(x) y = S.
  NeumannSolution sol = solve_neumann(table_, 1.0 / (length * length), forcing);
  PiiProfile p;
  p.z.resize(grid_.size());
  for (std::size_t k = 0; k < grid_.size(); ++k)
    p.z[k] = instance_.a + length * grid_[k];
  p.z.back() = instance_.b;
  p.y = std::move(sol.profile.values);
  p.y_prime = std::move(sol.profile.derivs);
  for (double& d : p.y_prime)
    d /= length;
  return p;
}

void DirectSeriesState::extend(int up_to) {
  while (order() < up_to) {
    const int n = order() + 1;
    PiiProfile t = solve_order(forcing(n));
    if (partial_.empty()) {
      partial_.push_back(t);
    } else {
      PiiProfile sum = partial_.back();
      for (std::size_t k = 0; k < sum.size(); ++k) {
        sum.y[k] += t.y[k];
        sum.y_prime[k] += t.y_prime[k];
      }
      partial_.push_back(std::move(sum));
    }
    terms_.push_back(std::move(t));

    // Pair sums for m = n + 1 use y_1 .. y_n.
    const int m = n + 1;
    std::vector<double> q(grid_.size(), 0.0);
    for (int i = 1; i <= m - i; ++i) {
      const auto& yi = term(i).y;
      const auto& yj = term(m - i).y;
      const double w = (i == m - i) ? 1.0 : 2.0;
      for (std::size_t k = 0; k < q.size(); ++k)
        q[k] += w * yi[k] * yj[k];
    }
    pair_products_.push_back(std::move(q));
  }
}

const PiiProfile& direct_term(DirectSeriesState& state, int n) {
  if (n < 1)
    throw ContractError("direct_term: order must be >= 1");
  state.extend(n);
  return state.term(n);
}

DirectVerdict assess_latest(std::span<const double> d) {
  if (d.empty())
    return DirectVerdict::Undecided;
  const double last = d.back();
  if (!std::isfinite(last))
    return DirectVerdict::Divergent;
  if (last <= direct_converged_tol)
    return DirectVerdict::Converging;
  const std::size_t window = direct_growth_window;
  if (d.size() <= window)
    return DirectVerdict::Undecided;
  const std::size_t lo = d.size() - 1 - window;
  for (std::size_t k = lo; k + 1 < d.size(); ++k)
    if (d[k + 1] < d[k])
      return DirectVerdict::Undecided;
  return last >= direct_growth_factor * d[lo] ? DirectVerdict::Divergent : DirectVerdict::Undecided;
}

DirectReport direct_partial_sums(DirectSeriesState& state, const PiiProfile& reference, int up_to) {
  if (reference.size() != state.grid().size())
    throw ContractError("direct_partial_sums: reference profile not sampled on the state grid");
  const int last = std::clamp(up_to, 1, direct_order_cap);
  DirectReport report;
  for (int n = 1; n <= last; ++n) {
    state.extend(n);
    const PiiProfile& sum = state.partial_sum(n);
    double worst = 0.0;
    bool finite = true;
    for (std::size_t k = 0; k < sum.size(); ++k) {
      const double d = std::abs(sum.y[k] - reference.y[k]);
      if (!std::isfinite(d))
        finite = false;
      worst = std::max(worst, d);
    }
    if (!finite)
      worst = std::numeric_limits<double>::infinity();
    report.discrepancies.push_back(worst);
    // Even orders vanish identically (the expansion is odd in C).
    report.last_term_size = 0.0;
    for (int m = std::max(1, n - 1); m <= n; ++m)
      for (double v : state.term(m).y)
        report.last_term_size = std::max(report.last_term_size, std::abs(v));

    if (report.verdict == DirectVerdict::Undecided) {
      report.verdict = assess_latest(report.discrepancies);
      if (report.verdict != DirectVerdict::Undecided)
        report.decided_at = n;
    }
    report.running.push_back(report.verdict);
    if (!finite)
      break;
  }
  return report;
}

SizeRatios size_ratios(const PiiProfile& y, const PiiInstance& inst) {
  SizeRatios r;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double cubic = std::abs(2.0 * y.y[k] * y.y[k] * y.y[k]);
    const double linear = std::abs(y.z[k] * y.y[k]);
    r.cubic_over_linear = std::max(r.cubic_over_linear, cubic / linear);
    r.cubic_over_constant = std::max(r.cubic_over_constant, cubic / std::abs(inst.c));
  }
  return r;
}

double direct_term_residual(const DirectSeriesState& state, int n) {
  const PiiProfile& t = state.term(n);
  const auto s = state.forcing(n);
  const double length = state.instance().b - state.instance().a;
  // y_n' is already d/dz, so one more x-derivative needs a single 1/L.
  const auto y2 = derivative4(t.y_prime, state.grid());
  double worst = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k)
    worst = std::max(worst, std::abs(y2[k] / length - t.z[k] * t.y[k] - s[k]));
  return worst;
}

} // namespace pii
