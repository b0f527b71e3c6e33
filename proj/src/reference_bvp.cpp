#include "pii/reference_bvp.hpp"

#include "pii/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace pii {

std::string_view to_string(SolutionType type) {
  switch (type) {
  case SolutionType::TypeA:
    return "TypeA";
  case SolutionType::TypeB:
    return "TypeB";
  case SolutionType::Null:
    return "Null";
  }
  return "Null";
}

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v)
    m = std::max(m, std::abs(x));
  return m;
}

/// Tridiagonal matrix plus two dense columns (first and last unknown):
/// J = T + U V^T with V = [e_0, e_{n-1}]. Solved with one Thomas factorisation
/// and a 2x2 capacitance system.
class BorderedTridiagonal {
public:
  explicit BorderedTridiagonal(std::size_t n) : lower(n), diag(n), upper(n), col_first(n), col_last(n) {}

  std::vector<double> lower, diag, upper;
  std::vector<double> col_first, col_last; // off-band parts only

  std::vector<double> solve(std::span<const double> rhs) {
    factor();
    std::vector<double> y(rhs.begin(), rhs.end());
    thomas(y);
    std::vector<double> z0 = col_first;
    std::vector<double> z1 = col_last;
    thomas(z0);
    thomas(z1);
    const std::size_t m = y.size() - 1;
    const double s00 = 1.0 + z0[0], s01 = z1[0];
    const double s10 = z0[m], s11 = 1.0 + z1[m];
    const double det = s00 * s11 - s01 * s10;
    if (!std::isfinite(det) || det == 0.0)
      throw ContractError("bordered solve: singular capacitance matrix");
    const double w0 = (s11 * y[0] - s01 * y[m]) / det;
    const double w1 = (-s10 * y[0] + s00 * y[m]) / det;
    for (std::size_t k = 0; k < y.size(); ++k)
      y[k] -= z0[k] * w0 + z1[k] * w1;
    return y;
  }

private:
  std::vector<double> c_star_, d_inv_;

  void factor() {
    const std::size_t n = diag.size();
    c_star_.assign(n, 0.0);
    d_inv_.assign(n, 0.0);
    double pivot = diag[0];
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0)
        pivot = diag[k] - lower[k] * c_star_[k - 1];
      if (pivot == 0.0 || !std::isfinite(pivot))
        throw ContractError("bordered solve: zero pivot in tridiagonal factorisation");
      d_inv_[k] = 1.0 / pivot;
      c_star_[k] = upper[k] * d_inv_[k];
    }
  }

  void thomas(std::vector<double>& b) const {
    const std::size_t n = b.size();
    b[0] *= d_inv_[0];
    for (std::size_t k = 1; k < n; ++k)
      b[k] = (b[k] - lower[k] * b[k - 1]) * d_inv_[k];
    for (std::size_t k = n - 1; k-- > 0;)
      b[k] -= c_star_[k] * b[k + 1];
  }
};

/// Second-order finite-difference system with ghost nodes for the Neumann
/// conditions. Residuals are scaled by h^2 / (2 nu), i.e. written as
/// E_{k-1} - 2 E_k + E_{k+1} - h^2 g_k / (2 nu).
class DiscreteProblem {
public:
  DiscreteProblem(const Parameters& p, const Grid& grid) : p_(p), grid_(grid), eta_(grid.spacing() * grid.spacing() / (2.0 * p.nu)) {}

  double mu = 0.0;

  std::vector<double> residual(std::span<const double> e) const {
    const std::size_t n = e.size();
    const double e0 = e.front(), e1 = e.back();
    const double jump = e0 * e0 - e1 * e1;
    const double slope_coef = 4.0 * p_.sigma + p_.nu * jump;
    const double lin_coef = 2.0 - 2.0 * p_.sigma - p_.nu * e0 * e0;
    const double shift = p_.nu * p_.tau * jump - 4.0 * mu;
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double left = k == 0 ? e[1] : e[k - 1];
      const double right = k + 1 == n ? e[n - 2] : e[k + 1];
      const double g = p_.nu * e[k] * e[k] * e[k] + slope_coef * grid_[k] * e[k] + lin_coef * e[k] + shift;
      r[k] = (left - 2.0 * e[k] + right) - eta_ * g;
    }
    return r;
  }

  BorderedTridiagonal jacobian(std::span<const double> e) const {
    const std::size_t n = e.size();
    const double e0 = e.front(), e1 = e.back();
    const double jump = e0 * e0 - e1 * e1;
    const double slope_coef = 4.0 * p_.sigma + p_.nu * jump;
    const double lin_coef = 2.0 - 2.0 * p_.sigma - p_.nu * e0 * e0;
    BorderedTridiagonal j(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double x = grid_[k];
      const double local = 3.0 * p_.nu * e[k] * e[k] + slope_coef * x + lin_coef;
      j.diag[k] = -2.0 - eta_ * local;
      j.lower[k] = k == 0 ? 0.0 : (k + 1 == n ? 2.0 : 1.0);
      j.upper[k] = k + 1 == n ? 0.0 : (k == 0 ? 2.0 : 1.0);
      // d g_k / d E(0) and d g_k / d E(1)
      const double dg_first = 2.0 * p_.nu * e0 * (x * e[k] - e[k] + p_.tau);
      const double dg_last = -2.0 * p_.nu * e1 * (x * e[k] + p_.tau);
      j.col_first[k] = -eta_ * dg_first;
      j.col_last[k] = -eta_ * dg_last;
    }
    // Entries inside the band belong to the tridiagonal part.
    j.diag[0] += j.col_first[0];
    j.lower[1] += j.col_first[1];
    j.col_first[0] = j.col_first[1] = 0.0;
    j.diag[n - 1] += j.col_last[n - 1];
    j.upper[n - 2] += j.col_last[n - 2];
    j.col_last[n - 1] = j.col_last[n - 2] = 0.0;
    return j;
  }

private:
  Parameters p_;
  Grid grid_;
  double eta_;
};

/// Damped Newton at fixed mu; e holds the initial guess and the result.
void newton_solve(const DiscreteProblem& problem, std::vector<double>& e, const ReferenceOptions& opt) {
  double res = max_abs(problem.residual(e));
  double prev_update = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_newton_iterations; ++it) {
    auto r = problem.residual(e);
    for (double& v : r)
      v = -v;
    auto jac = problem.jacobian(e);
    const std::vector<double> step = jac.solve(r);
    const double update = max_abs(step);
    const double scale = std::max(1.0, max_abs(e));

    double lambda = 1.0;
    std::vector<double> trial(e.size());
    double trial_res = 0.0;
    int halvings = 0;
    for (;; ++halvings) {
      for (std::size_t k = 0; k < e.size(); ++k)
        trial[k] = e[k] + lambda * step[k];
      trial_res = max_abs(problem.residual(trial));
      // Near roundoff the residual no longer decreases monotonically.
      if (trial_res < res || trial_res <= 1e-13 * scale || halvings >= opt.max_halvings)
        break;
      lambda *= 0.5;
    }
    if (halvings >= opt.max_halvings && trial_res >= res && trial_res > 1e-13 * scale)
      throw ConvergenceError("damped Newton: no descent after " + std::to_string(opt.max_halvings) + " step halvings",
                             res, problem.mu);
    e.swap(trial);
    res = trial_res;

    const bool small = update <= opt.update_tol * scale;
    // Once quadratic convergence has reached the roundoff floor the update
    // stops shrinking; accept it there.
    const bool stagnated = it >= 2 && update <= 1e-9 * scale && update > 0.25 * prev_update;
    if ((small || stagnated) && res <= 1e-10 * scale)
      return;
    prev_update = update;
  }
  throw ConvergenceError("damped Newton: iteration limit reached", res, problem.mu);
}

std::vector<double> continuation_solve(const Parameters& params, const Grid& grid, const ReferenceOptions& opt) {
  DiscreteProblem problem(params, grid);
  std::vector<double> e(grid.size(), 0.0);
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(params.mu) / opt.max_mu_step - 1e-12)));
  for (int s = 1; s <= steps; ++s) {
    problem.mu = params.mu * static_cast<double>(s) / steps;
    newton_solve(problem, e, opt);
  }
  return e;
}

// Cubic interpolation of a coarse profile onto the doubled mesh.
std::vector<double> prolong(std::span<const double> coarse) {
  const std::size_t n = coarse.size();
  std::vector<double> fine(2 * n - 1);
  for (std::size_t k = 0; k < n; ++k)
    fine[2 * k] = coarse[k];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (k == 0 || k + 2 == n) {
      fine[2 * k + 1] = 0.5 * (coarse[k] + coarse[k + 1]);
    } else {
      fine[2 * k + 1] = (-coarse[k - 1] + 9.0 * coarse[k] + 9.0 * coarse[k + 1] - coarse[k + 2]) / 16.0;
    }
  }
  return fine;
}

} // namespace

SolutionType classify_type(const GridFunction& profile) {
  const double amplitude = max_abs(profile.values);
  if (amplitude == 0.0)
    return SolutionType::Null;
  const double slack = 1e-7 * amplitude;
  const bool positive = std::all_of(profile.values.begin(), profile.values.end(), [](double v) { return v > 0.0; });
  const bool negative = std::all_of(profile.values.begin(), profile.values.end(), [](double v) { return v < 0.0; });
  const bool non_increasing = std::all_of(profile.derivs.begin(), profile.derivs.end(), [&](double d) { return d <= slack; });
  const bool non_decreasing = std::all_of(profile.derivs.begin(), profile.derivs.end(), [&](double d) { return d >= -slack; });
  if (positive && non_increasing)
    return SolutionType::TypeA;
  if (negative && non_decreasing)
    return SolutionType::TypeB;
  throw ClassificationError("profile is neither positive decreasing nor negative increasing");
}

SolutionType classify_type(const ReferenceSolution& sol) { return classify_type(sol.profile); }

namespace {

std::string scientific_message(const char* lead, double value, const char* mid, double limit) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << lead << value << mid << limit;
  return s.str();
}

} // namespace

double equation_residual(const Parameters& p, const GridFunction& profile) {
  const Grid& grid = profile.grid;
  // Difference on every stride-th node: the rounding error of E'' grows like
  // eps |E| / h^2 and reaches 1e-8 at h = 1/2048, while the truncation error
  // of the fourth-order stencil is still below 1e-12 at h = 1/512.
  std::size_t stride = 1;
  while ((grid.size() - 1) / (2 * stride) >= residual_min_panels && (grid.size() - 1) % (2 * stride) == 0)
    stride *= 2;
  const Grid coarse((grid.size() - 1) / stride + 1);
  std::vector<double> e(coarse.size());
  for (std::size_t k = 0; k < e.size(); ++k)
    e[k] = profile.values[k * stride];
  const auto e2 = second_derivative4(e, coarse);
  const double e0 = e.front(), e1 = e.back();
  const double jump = e0 * e0 - e1 * e1;
  const double slope_coef = 4.0 * p.sigma + p.nu * jump;
  const double lin_coef = 2.0 - 2.0 * p.sigma - p.nu * e0 * e0;
  const double shift = p.nu * p.tau * jump;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    const double x = coarse[k];
    const std::array<double, 5> terms{p.nu * e[k] * e[k] * e[k], slope_coef * x * e[k], lin_coef * e[k], shift, -4.0 * p.mu};
    double rhs = 0.0, size = 1.0;
    for (double t : terms) {
      rhs += t;
      size += std::abs(t);
    }
    worst = std::max(worst, std::abs(2.0 * p.nu * e2[k] - rhs) / size);
  }
  return worst;
}

ReferenceSolution solve_reference(const Parameters& params, const Grid& grid, double tol, const ReferenceOptions& options) {
  params.validate();
  if (!(tol >= 1e-12))
    throw ValidationError("solve_reference: tol must be >= 1e-12");

  ReferenceSolution sol{params, GridFunction(grid)};
  if (params.mu == 0.0)
    return sol;

  std::vector<double> coarse = continuation_solve(params, grid, options);
  std::vector<double> values = coarse;
  if (options.extrapolate) {
    const Grid fine_grid = grid.refined();
    DiscreteProblem fine_problem(params, fine_grid);
    fine_problem.mu = params.mu;
    std::vector<double> fine = prolong(coarse);
    try {
      newton_solve(fine_problem, fine, options);
    } catch (const ConvergenceError&) {
      fine = continuation_solve(params, fine_grid, options);
    }
    for (std::size_t k = 0; k < values.size(); ++k)
      values[k] = (4.0 * fine[2 * k] - coarse[k]) / 3.0;
  }

  auto derivs = derivative4(values, grid);
  sol.profile = GridFunction(grid, std::move(values), std::move(derivs));
  sol.e0 = sol.profile.front();
  sol.e1 = sol.profile.back();
  sol.residual_norm = equation_residual(params, sol.profile);
  if (!(sol.residual_norm <= tol))
    throw ConvergenceError(scientific_message("solve_reference: residual ", sol.residual_norm, " above tolerance ", tol),
                           sol.residual_norm, params.mu);
  sol.type = classify_type(sol.profile);
  const SolutionType expected = params.mu > 0.0 ? SolutionType::TypeA : SolutionType::TypeB;
  if (sol.type != expected)
    throw ClassificationError("solve_reference: solution type does not match the sign of mu");
  return sol;
}

} // namespace pii
