#include "pii/extraordinary.hpp"

#include "pii/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pii {

std::optional<PiiInstance> try_convert(double e0, double e1, const Parameters& params) {
  const double jump = e0 * e0 - e1 * e1;
  const double cube = 2.0 * params.sigma / params.nu + 0.5 * jump;
  if (!(cube > 0.0))
    return std::nullopt;
  PiiInstance inst;
  inst.beta = std::cbrt(cube);
  inst.gamma = (1.0 - params.sigma - 0.5 * params.nu * e0 * e0) / (params.nu * inst.beta * inst.beta);
  inst.a = inst.gamma;
  inst.b = inst.gamma + inst.beta;
  inst.c = (params.nu * params.tau * jump - 4.0 * params.mu) / (4.0 * params.nu * cube) + 0.0; // no -0
  return inst;
}

PiiInstance convert(double e0, double e1, const Parameters& params) {
  auto inst = try_convert(e0, e1, params);
  if (!inst)
    throw ConversionError("convert: 2 sigma / nu + [E(0)^2 - E(1)^2] / 2 is not positive");
  return *inst;
}

PiiProfile convert_profile(const GridFunction& e, const PiiInstance& inst) {
  PiiProfile out;
  const std::size_t n = e.size();
  out.z.resize(n);
  out.y.resize(n);
  out.y_prime.resize(n);
  const double inv_two_beta = 0.5 / inst.beta;
  const double inv_two_beta2 = inv_two_beta / inst.beta;
  for (std::size_t k = 0; k < n; ++k) {
    out.z[k] = inst.gamma + inst.beta * e.grid[k];
    out.y[k] = e.values[k] * inv_two_beta;
    out.y_prime[k] = e.derivs[k] * inv_two_beta2;
  }
  out.z.back() = inst.b;
  return out;
}

std::vector<ExtraordinaryApproximant> extraordinary_sequence(const SeriesState& state, int up_to, bool with_profiles) {
  if (up_to > state.order())
    throw ContractError("extraordinary_sequence: series holds only " + std::to_string(state.order()) + " orders");
  std::vector<ExtraordinaryApproximant> out;
  out.reserve(static_cast<std::size_t>(std::max(up_to, 0)));
  for (int n = 1; n <= up_to; ++n) {
    const GridFunction& partial = state.partial_sum(n);
    ExtraordinaryApproximant approx;
    approx.order = n;
    if (auto inst = try_convert(partial.front(), partial.back(), state.params())) {
      approx.instance = *inst;
      approx.valid = true;
      if (with_profiles)
        approx.profile = convert_profile(partial, *inst);
    } else {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      approx.instance = {nan, nan, nan, nan, nan};
    }
    out.push_back(std::move(approx));
  }
  return out;
}

double pii_residual(const PiiProfile& y, const PiiInstance& inst) {
  if (y.size() < Grid::min_nodes)
    throw ContractError("pii_residual: profile needs at least 257 samples");
  const double h = (y.z.back() - y.z.front()) / static_cast<double>(y.size() - 1);
  const auto y2 = second_derivative2(y.y, h);
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < y.size(); ++k) {
    const double v = y.y[k];
    worst = std::max(worst, std::abs(y2[k] - 2.0 * v * v * v - y.z[k] * v - inst.c));
  }
  return worst;
}

double normalized_sup_distance(const PiiProfile& u, const PiiProfile& v) {
  if (u.size() != v.size())
    throw ContractError("normalized_sup_distance: profiles sampled on different grids");
  double worst = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k)
    worst = std::max(worst, std::abs(u.y[k] - v.y[k]));
  return worst;
}

} // namespace pii
