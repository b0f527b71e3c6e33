#pragma once

#include <string>

namespace pii {

/// Dimensionless constants of the two-ion electrodiffusion boundary value
/// problem. Admissible box: nu > 0, 0 < sigma < 1, -1 < tau < 1, mu real.
struct Parameters {
  double sigma = 1.0 / 3.0;
  double tau = -0.2;
  double nu = 3.5;
  double mu = 0.0;

  /// Throws ValidationError when outside the admissible box.
  void validate() const;

  /// Parameters with mu replaced, everything else unchanged.
  Parameters with_mu(double new_mu) const {
    Parameters p = *this;
    p.mu = new_mu;
    return p;
  }

  std::string describe() const;
};

/// The two worked examples used throughout the tests and the CLI presets.
namespace cases {
inline constexpr Parameters type_a{1.0 / 3.0, -0.2, 3.5, 2.0};
inline constexpr Parameters type_b{1.0 / 3.0, -0.2, 0.1, -0.5};
} // namespace cases

} // namespace pii
