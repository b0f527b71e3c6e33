#pragma once

#include "pii/mesh.hpp"
#include "pii/parameters.hpp"
#include "pii/series.hpp"

#include <optional>
#include <vector>

namespace pii {

/// Data of the Painleve II problem y'' = 2y^3 + zy + C on [a, b] with
/// y'(a) = 0 = y'(b), as produced from endpoint values E(0), E(1):
///
///   beta  = (2 sigma / nu + [E(0)^2 - E(1)^2] / 2)^(1/3),
///   gamma = [1 - sigma - nu E(0)^2 / 2] / (nu beta^2),
///   C     = (nu tau [E(0)^2 - E(1)^2] - 4 mu) / (4 nu beta^3),
///   a = gamma, b = gamma + beta.
struct PiiInstance {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Throws ConversionError if the cube-root argument is not positive.
PiiInstance convert(double e0, double e1, const Parameters& params);

/// Same as convert() but reports a non-positive cube-root argument as nullopt.
std::optional<PiiInstance> try_convert(double e0, double e1, const Parameters& params);

/// y(z) = E(x) / (2 beta) at z = gamma + beta x; y'(z) = E'(x) / (2 beta^2).
struct PiiProfile {
  std::vector<double> z;
  std::vector<double> y;
  std::vector<double> y_prime;

  std::size_t size() const { return z.size(); }
};

PiiProfile convert_profile(const GridFunction& e, const PiiInstance& inst);

/// y_E^(n) on its own interval [a_n, b_n] with constant C_n.
struct ExtraordinaryApproximant {
  int order = 0;
  PiiInstance instance;
  PiiProfile profile;
  bool valid = false;
};

/// One approximant per order 1 .. up_to. An order whose cube-root argument
/// is not positive is kept with valid = false and an empty profile.
/// Throws ContractError if the state holds fewer than up_to orders.
std::vector<ExtraordinaryApproximant> extraordinary_sequence(const SeriesState& state, int up_to,
                                                             bool with_profiles = true);

/// max over interior nodes of |y'' - 2y^3 - z y - C|, y'' by central
/// differences. Throws ContractError for fewer than 257 samples.
double pii_residual(const PiiProfile& y, const PiiInstance& inst);

/// Sup-norm distance between two profiles compared in the normalised
/// coordinate x = (z - gamma) / beta; both must come from the same x-grid.
double normalized_sup_distance(const PiiProfile& u, const PiiProfile& v);

} // namespace pii
