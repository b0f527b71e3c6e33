#include "pii/specfun.hpp"

#include "pii/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pii {

namespace {

// Ai, Ai', Bi, Bi' at t = -10, -9, ..., 10 (high-precision values).
constexpr int anchor_min = -10;
constexpr int anchor_max = 10;
constexpr std::array<std::array<double, 4>, 21> anchors{{
    {4.02412384864431906894e-2, 9.96265044132790055905e-1, -3.14679829643838633162e-1, 1.19414113399909238278e-1},
    {-2.21337215473414036742e-2, -9.75663980926331594713e-1, 3.24947323455244917919e-1, -5.74005138436692543927e-2},
    {-5.27050503563862026221e-2, 9.35560938198306551026e-1, -3.3125158075113785997e-1, -1.5945049781298138935e-1},
    {1.8428083525050563728e-1, -7.71008168410126547731e-1, 2.93762071854414020124e-1, 4.98244590058113488746e-1},
    {-3.29145173629823105231e-1, 3.4593548728134289493e-1, -1.46698376670557037875e-1, -8.12898785105067000425e-1},
    {3.50761009024114319788e-1, 3.27192818554443136795e-1, -1.3836913490160057685e-1, 7.78411773001899246094e-1},
    {-7.02655329492895150991e-2, -7.90628575368581380296e-1, 3.92234705706999289554e-1, -1.1667056743834089368e-1},
    {-3.78814293677658074347e-1, 3.14583769216598813651e-1, -1.98289626374926543221e-1, -6.75611222685258537668e-1},
    {2.27407428201685575992e-1, 6.18259020741691041406e-1, -4.12302587956398488083e-1, 2.78795166921169522685e-1},
    {5.355608832923521188e-1, -1.0160567116645209395e-2, 1.03997389496944611889e-1, 5.92375626422792350817e-1},
    // t = 0: 3^(-2/3)/Gamma(2/3), -3^(-1/3)/Gamma(1/3), 3^(-1/6)/Gamma(2/3), 3^(1/6)/Gamma(1/3)
    {3.5502805388781723926e-1, -2.58819403792806798405e-1, 6.14926627446000735151e-1, 4.48288357353826357915e-1},
    {1.35292416312881415524e-1, -1.59147441296793212788e-1, 1.20742359495287125944, 9.32435933392775632959e-1},
    {3.49241304232743791353e-2, -5.3090384433653631704e-2, 3.29809499997821471028, 4.10068204993288988938},
    {6.59113935746071914426e-3, -1.19129767059513184738e-2, 1.40373289637302320317e+1, 2.29222149663821701851e+1},
    {9.51563851204801873621e-4, -1.95864095020417890014e-3, 8.38470714084681399226e+1, 1.61926683504613401843e+2},
    {1.0834442813607441735e-4, -2.47413890868462476e-4, 6.57792044171171182441e+2, 1.43581908021798251867e+3},
    {9.94769436025288957024e-6, -2.47652003970349547542e-5, 6.53644610480986345376e+3, 1.57256026219304768394e+4},
    {7.49212886399716708077e-7, -2.00815089473879199117e-6, 8.03277907094302470054e+4, 2.09552670873971319506e+5},
    {4.69220761609923162565e-8, -1.34143929790678657429e-7, 1.19958600412445993088e+6, 3.35434231274453887651e+6},
    {2.47116843087248984329e-9, -7.48064138965894641276e-9, 2.14728688914353490934e+7, 6.38074897809082138545e+7},
    {1.10475325528986859336e-10, -3.52063367673892363662e-10, 4.55641153548225141e+8, 1.42923613448286577612e+9},
}};

static_assert(anchors.size() == anchor_max - anchor_min + 1);

constexpr double taylor_limit = 9.5;

// Solution f of f'' = t f expanded about t0, evaluated at t0 + h.
struct ValueSlope {
  double value;
  double slope;
};

ValueSlope taylor_step(double t0, double f0, double f1, double h) {
  // a_m = (t0 a_{m-2} + a_{m-3}) / (m (m-1)), with a_2 = t0 a_0 / 2
  double a3 = f0;            // a_{m-3}
  double a2 = f1;            // a_{m-2}
  double a1 = 0.5 * t0 * f0; // a_{m-1}
  double value = f0 + f1 * h + a1 * h * h;
  double slope = f1 + 2.0 * a1 * h;
  double h_pow = h * h; // h^(m-1)
  int negligible = 0;    // consecutive tiny terms; every third one can vanish exactly
  for (int m = 3; m < 64; ++m) {
    const double a = (t0 * a2 + a3) / (m * (m - 1.0));
    a3 = a2;
    a2 = a1;
    a1 = a;
    const double dterm = m * a * h_pow;
    h_pow *= h;
    const double vterm = a * h_pow;
    value += vterm;
    slope += dterm;
    const bool tiny = std::abs(vterm) <= 1e-18 * std::abs(value) && std::abs(dterm) <= 1e-18 * std::abs(slope);
    negligible = tiny ? negligible + 1 : 0;
    if (negligible == 3)
      break;
  }
  return {value, slope};
}

AiryQuad airy_taylor(double t) {
  const double t0 = std::round(t);
  const double h = t - t0;
  const auto& row = anchors[static_cast<std::size_t>(static_cast<int>(t0) - anchor_min)];
  const auto ai = taylor_step(t0, row[0], row[1], h);
  const auto bi = taylor_step(t0, row[2], row[3], h);
  return {ai.value, bi.value, ai.slope, bi.slope};
}

// Coefficients u_k, v_k of the asymptotic expansions.
constexpr int n_coeff = 40;

constexpr std::array<double, n_coeff> make_u() {
  std::array<double, n_coeff> u{};
  u[0] = 1.0;
  for (int k = 1; k < n_coeff; ++k)
    u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
  return u;
}

constexpr std::array<double, n_coeff> make_v(const std::array<double, n_coeff>& u) {
  std::array<double, n_coeff> v{};
  v[0] = 1.0;
  for (int k = 1; k < n_coeff; ++k)
    v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
  return v;
}

constexpr auto u_coeff = make_u();
constexpr auto v_coeff = make_v(u_coeff);

// sum_k c_k (sign / zeta)^k, truncated at the smallest term.
double exp_series(const std::array<double, n_coeff>& c, double inv_zeta, double sign) {
  double total = 0.0;
  double power = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_coeff; ++k) {
    const double term = c[k] * power;
    if (std::abs(term) > last)
      break;
    total += term;
    last = std::abs(term);
    if (last <= 1e-17 * std::abs(total))
      break;
    power *= sign * inv_zeta;
  }
  return total;
}

// sum_k (-1)^k c_{2k+parity} zeta^-(2k+parity), truncated at the smallest term.
double phase_series(const std::array<double, n_coeff>& c, double inv_zeta, int parity) {
  double total = 0.0;
  double power = parity ? inv_zeta : 1.0;
  const double step = -inv_zeta * inv_zeta;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; 2 * k + parity < n_coeff; ++k) {
    const double term = c[2 * k + parity] * power;
    if (std::abs(term) > last)
      break;
    total += term;
    last = std::abs(term);
    if (last <= 1e-17 * std::abs(total))
      break;
    power *= step;
  }
  return total;
}

AiryQuad airy_asymptotic_positive(double t) {
  const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
  const double inv_zeta = 1.0 / zeta;
  const double root_pi = std::sqrt(std::numbers::pi);
  const double quarter = std::sqrt(std::sqrt(t));
  const double decay = std::exp(-zeta);
  const double growth = std::exp(zeta);
  AiryQuad q;
  q.ai = decay / (2.0 * root_pi * quarter) * exp_series(u_coeff, inv_zeta, -1.0);
  q.ai_prime = -quarter * decay / (2.0 * root_pi) * exp_series(v_coeff, inv_zeta, -1.0);
  q.bi = growth / (root_pi * quarter) * exp_series(u_coeff, inv_zeta, 1.0);
  q.bi_prime = quarter * growth / root_pi * exp_series(v_coeff, inv_zeta, 1.0);
  return q;
}

AiryQuad airy_asymptotic_negative(double t) {
  const double x = -t;
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double inv_zeta = 1.0 / zeta;
  const double root_pi = std::sqrt(std::numbers::pi);
  const double quarter = std::sqrt(std::sqrt(x));
  const double theta = zeta - 0.25 * std::numbers::pi;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double pu = phase_series(u_coeff, inv_zeta, 0);
  const double qu = phase_series(u_coeff, inv_zeta, 1);
  const double pv = phase_series(v_coeff, inv_zeta, 0);
  const double qv = phase_series(v_coeff, inv_zeta, 1);
  AiryQuad q;
  q.ai = (c * pu + s * qu) / (root_pi * quarter);
  q.bi = (-s * pu + c * qu) / (root_pi * quarter);
  q.ai_prime = quarter / root_pi * (s * pv - c * qv);
  q.bi_prime = quarter / root_pi * (c * pv + s * qv);
  return q;
}

} // namespace

AiryQuad airy_eval(double t) {
  if (!std::isfinite(t) || std::abs(t) > airy_max_argument)
    throw DomainError("airy_eval: argument " + std::to_string(t) + " outside supported interval [-30, 30]");
  if (std::abs(t) <= taylor_limit)
    return airy_taylor(t);
  return t > 0.0 ? airy_asymptotic_positive(t) : airy_asymptotic_negative(t);
}

BasisSample ScaledAiryBasis::sample(double x) const {
  const AiryQuad q = airy_eval(argument(x));
  return {q.ai, q.bi, slope * q.ai_prime, slope * q.bi_prime};
}

ScaledAiryBasis scaled_basis(const Parameters& params) {
  params.validate();
  ScaledAiryBasis basis;
  basis.scale = std::cbrt(1.0 / (4.0 * params.nu * params.sigma * params.sigma));
  basis.offset = (1.0 - params.sigma) * basis.scale;
  basis.slope = 2.0 * params.sigma * basis.scale;
  basis.wronskian = std::cbrt(2.0 * params.sigma / (std::numbers::pi * std::numbers::pi * std::numbers::pi * params.nu));
  return basis;
}

ScaledAiryBasis affine_basis(double z0, double z1) {
  if (!(z1 > z0))
    throw ValidationError("affine_basis: interval must have z1 > z0");
  ScaledAiryBasis basis;
  basis.scale = 1.0;
  basis.offset = z0;
  basis.slope = z1 - z0;
  basis.wronskian = basis.slope / std::numbers::pi;
  return basis;
}

} // namespace pii
