#pragma once

// Maclaurin-series Airy functions in 170-digit floating point. At t = 30 the
// series terms reach ~1e47 while Ai(30) ~ 1e-48, so about 95 digits cancel and
// roughly 75 survive.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<170>>;

struct AiryValues {
  double ai, bi, ai_prime, bi_prime;
};

// Ai(0) = 3^(-2/3) / Gamma(2/3)
inline big airy_c1() {
  return 1 / (boost::multiprecision::pow(big(3), big(2) / 3) * boost::math::tgamma(big(2) / 3));
}

// -Ai'(0) = 3^(-1/3) / Gamma(1/3)
inline big airy_c2() {
  return 1 / (boost::multiprecision::pow(big(3), big(1) / 3) * boost::math::tgamma(big(1) / 3));
}

// Ai = c1 f - c2 g, Bi = sqrt(3) (c1 f + c2 g) with
//   f = sum_k t^{3k} / prod_{j<=k} (3j-1)(3j),  g = sum_k t^{3k+1} / prod_{j<=k} (3j)(3j+1).
// Derivative terms: f_k' = f_{k-1} t^2 / (3k-1), g_k' = g_{k-1} t^2 / (3k).
inline AiryValues airy(double t_in) {
  const big t = t_in;
  const big t2 = t * t;
  const big t3 = t2 * t;
  const big cutoff = boost::multiprecision::pow(big(10), -140);

  big f = 1, g = t, fp = 0, gp = 1;
  big fk = 1, gk = t;
  for (int k = 1; k < 4000; ++k) {
    const big a = 3 * k - 1, b = 3 * k, c = 3 * k + 1;
    const big fdk = fk * t2 / a;
    const big gdk = gk * t2 / b;
    fk = fk * t3 / (a * b);
    gk = gk * t3 / (b * c);
    f += fk;
    g += gk;
    fp += fdk;
    gp += gdk;
    const big size = abs(f) + abs(g) + abs(fp) + abs(gp);
    if (abs(fk) + abs(gk) + abs(fdk) + abs(gdk) <= cutoff * size)
      break;
  }
  const big c1 = airy_c1(), c2 = airy_c2();
  const big root3 = boost::multiprecision::sqrt(big(3));
  return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(root3 * (c1 * f + c2 * g)),
          static_cast<double>(c1 * fp - c2 * gp), static_cast<double>(root3 * (c1 * fp + c2 * gp))};
}

} // namespace oracle
