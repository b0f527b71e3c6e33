#pragma once

#include "pii/parameters.hpp"

namespace pii {

/// Ai, Bi and their derivatives at one real argument.
struct AiryQuad {
  double ai = 0.0;
  double bi = 0.0;
  double ai_prime = 0.0;
  double bi_prime = 0.0;

  double wronskian() const { return ai * bi_prime - ai_prime * bi; }
};

/// Largest |t| accepted by airy_eval.
inline constexpr double airy_max_argument = 30.0;

/// Airy functions of the first and second kind in double precision.
///
/// For |t| <= 9.5 the functions are summed as local Taylor series about the
/// nearest integer, where Ai and Bi are tabulated to 21 digits; beyond that
/// the standard asymptotic expansions are used (exponential form for t > 0,
/// modulus/phase form for t < 0). Relative error is below 1e-13 measured
/// against the oscillation envelope on the negative axis.
///
/// Throws DomainError for non-finite t or |t| > airy_max_argument.
AiryQuad airy_eval(double t);

/// A, B and their x-derivatives at one point of [0, 1].
struct BasisSample {
  double a = 0.0;
  double b = 0.0;
  double a_prime = 0.0;
  double b_prime = 0.0;
};

/// Homogeneous solutions A(x) = Ai(s(x)), B(x) = Bi(s(x)) for an affine Airy
/// argument s(x) = offset + slope * x.
struct ScaledAiryBasis {
  double scale = 1.0;     ///< (4 nu sigma^2)^(-1/3); 1 for a plain affine map
  double offset = 0.0;    ///< s(0)
  double slope = 1.0;     ///< ds/dx
  double wronskian = 0.0; ///< A B' - A' B with respect to x, i.e. slope / pi

  double argument(double x) const { return offset + slope * x; }
  BasisSample sample(double x) const;
};

/// Basis for nu E'' = (1 - sigma + 2 sigma x) E + R on [0, 1]:
/// s = (1 - sigma + 2 sigma x) / (4 nu sigma^2)^(1/3).
/// Throws ValidationError for parameters outside the admissible box.
ScaledAiryBasis scaled_basis(const Parameters& params);

/// Basis Ai(z), Bi(z) with z = z0 + (z1 - z0) x, used on an interval [z0, z1].
ScaledAiryBasis affine_basis(double z0, double z1);

} // namespace pii
