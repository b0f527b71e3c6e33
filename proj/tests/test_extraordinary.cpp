#include "pii/error.hpp"
#include "pii/extraordinary.hpp"
#include "pii/reference_bvp.hpp"

#include <doctest.h>

#include <cmath>

using namespace pii;

namespace {

const Grid& shared_grid() {
  static const Grid g;
  return g;
}

const ReferenceSolution& reference_for(const Parameters& p) {
  static const ReferenceSolution a = solve_reference(cases::type_a, shared_grid());
  static const ReferenceSolution b = solve_reference(cases::type_b, shared_grid());
  return p.nu == cases::type_a.nu ? a : b;
}

const SeriesState& series_for(const Parameters& p) {
  static SeriesState a = extend_series(SeriesState(cases::type_a, shared_grid()), 100);
  static SeriesState b = extend_series(SeriesState(cases::type_b, shared_grid()), 100);
  return p.nu == cases::type_a.nu ? a : b;
}

// Closed-form interval of the zero solution.
double zero_left(double sigma, double nu) { return (1.0 - sigma) / std::cbrt(4.0 * nu * sigma * sigma); }
double zero_length(double sigma, double nu) { return std::cbrt(2.0 * sigma / nu); }

} // namespace

TEST_CASE("zero solution lands on the closed-form interval") {
  for (double nu : {3.5, 0.1}) {
    const Parameters p{1.0 / 3.0, -0.2, nu, 0.0};
    const auto inst = convert(0.0, 0.0, p);
    CHECK(inst.c == 0.0);
    CHECK(std::abs(inst.a - zero_left(p.sigma, nu)) <= 1e-9);
    CHECK(std::abs(inst.b - (zero_left(p.sigma, nu) + zero_length(p.sigma, nu))) <= 1e-9);
  }
  const auto wide = convert(0.0, 0.0, {1.0 / 3.0, -0.2, 3.5, 0.0});
  CHECK(wide.a == doctest::Approx(0.575).epsilon(1e-3));
  CHECK(wide.b == doctest::Approx(1.150).epsilon(1e-3));
  const auto narrow = convert(0.0, 0.0, {1.0 / 3.0, -0.2, 0.1, 0.0});
  CHECK(narrow.a == doctest::Approx(1.882).epsilon(1e-3));
  CHECK(narrow.b == doctest::Approx(3.764).epsilon(1e-3));
}

TEST_CASE("worked-example constants") {
  const auto& ra = reference_for(cases::type_a);
  const auto a = convert(ra.e0, ra.e1, cases::type_a);
  CHECK(std::abs(a.a - -15.650) <= 5e-3);
  CHECK(std::abs(a.b - -14.911) <= 5e-3);
  CHECK(std::abs(a.c - -1.468) <= 5e-3);

  const auto& rb = reference_for(cases::type_b);
  const auto b = convert(rb.e0, rb.e1, cases::type_b);
  CHECK(std::abs(b.a - 1.645) <= 5e-3);
  CHECK(std::abs(b.b - 3.554) <= 5e-3);
  CHECK(std::abs(b.c - 0.714) <= 5e-3);
}

TEST_CASE("non-positive cube-root argument") {
  const Parameters p{1.0 / 3.0, -0.2, 3.5, 1.0};
  // 2 sigma / nu = 0.19; a jump of -1 makes the argument negative.
  CHECK_FALSE(try_convert(0.0, 1.0, p).has_value());
  CHECK_THROWS_AS(convert(0.0, 1.0, p), ConversionError);
  CHECK(try_convert(1.0, 0.0, p).has_value());
}

TEST_CASE("interval length and constant") {
  for (const Parameters& p : {cases::type_a, cases::type_b}) {
    const auto& r = reference_for(p);
    const auto inst = convert(r.e0, r.e1, p);
    CHECK(inst.beta > 0.0);
    CHECK(inst.gamma == inst.a);
    CHECK(std::abs(inst.b - inst.a - inst.beta) <= 1e-14);

    const double jump = r.e0 * r.e0 - r.e1 * r.e1;
    const double c = (p.nu * p.tau * jump - 4.0 * p.mu) / (4.0 * p.nu * std::pow(inst.beta, 3));
    CHECK(std::abs(inst.c - c) <= 1e-12);
  }
}

TEST_CASE("zero profile converts to zero") {
  const auto inst = convert(0.0, 0.0, {0.5, 0.0, 1.0, 0.0});
  const auto y = convert_profile(GridFunction(Grid(257)), inst);
  for (std::size_t k = 0; k < y.size(); ++k) {
    CHECK(y.y[k] == 0.0);
    CHECK(y.y_prime[k] == 0.0);
  }
  CHECK(y.z.front() == inst.a);
  CHECK(y.z.back() == inst.b);
  CHECK(pii_residual(y, inst) == 0.0);
}

TEST_CASE("sign and monotonicity carry over to y") {
  const auto& ra = reference_for(cases::type_a);
  const auto ya = convert_profile(ra.profile, convert(ra.e0, ra.e1, cases::type_a));
  const auto& rb = reference_for(cases::type_b);
  const auto yb = convert_profile(rb.profile, convert(rb.e0, rb.e1, cases::type_b));
  for (std::size_t k = 0; k < ya.size(); ++k) {
    REQUIRE(ya.y[k] > 0.0);
    REQUIRE(yb.y[k] < 0.0);
    if (k > 0) {
      REQUIRE(ya.y[k] <= ya.y[k - 1]);
      REQUIRE(yb.y[k] >= yb.y[k - 1]);
      REQUIRE(ya.z[k] > ya.z[k - 1]);
    }
  }
}

TEST_CASE("converted reference satisfies the second Painleve equation") {
  const auto& r = reference_for(cases::type_a);
  const auto inst = convert(r.e0, r.e1, cases::type_a);
  const double res = pii_residual(convert_profile(r.profile, inst), inst);
  INFO("residual " << res);
  CHECK(res <= 1e-4);
}

TEST_CASE("conversion residual is pure discretization error") {
  auto residual_on = [](std::size_t nodes) {
    const auto r = solve_reference(cases::type_a, Grid(nodes));
    const auto inst = convert(r.e0, r.e1, cases::type_a);
    return pii_residual(convert_profile(r.profile, inst), inst);
  };
  const double coarse = residual_on(257), fine = residual_on(1025);
  INFO(coarse << " " << fine);
  CHECK(coarse / fine >= 10.0);
  CHECK(coarse / fine <= 24.0);
}

TEST_CASE("pii_residual needs enough samples") {
  PiiProfile y;
  y.z.assign(100, 0.0);
  y.y.assign(100, 0.0);
  y.y_prime.assign(100, 0.0);
  CHECK_THROWS_AS(pii_residual(y, PiiInstance{}), ContractError);
}

TEST_CASE("extraordinary approximants have flat ends and exact lengths") {
  for (const Parameters& p : {cases::type_a, cases::type_b}) {
    const auto seq = extraordinary_sequence(series_for(p), 100);
    REQUIRE(seq.size() == 100);
    double worst_slope = 0.0, worst_length = 0.0;
    for (const auto& approx : seq) {
      if (!approx.valid)
        continue;
      worst_slope = std::max({worst_slope, std::abs(approx.profile.y_prime.front()), std::abs(approx.profile.y_prime.back())});
      const auto& inst = approx.instance;
      worst_length = std::max(worst_length, std::abs(inst.b - inst.a - inst.beta));
      REQUIRE(approx.profile.z.front() == inst.a);
      REQUIRE(approx.profile.z.back() == inst.b);
    }
    INFO("nu=" << p.nu << " slope " << worst_slope << " length " << worst_length);
    CHECK(worst_slope <= 1e-9);
    CHECK(worst_length <= 1e-14);
  }
}

TEST_CASE("validity flag follows the cube-root argument") {
  for (const Parameters& p : {cases::type_a, cases::type_b}) {
    const auto& s = series_for(p);
    const auto seq = extraordinary_sequence(s, 100, false);
    for (const auto& approx : seq) {
      const double e0 = s.partial_end0(approx.order), e1 = s.partial_sum(approx.order).back();
      const bool positive = 2.0 * p.sigma / p.nu + 0.5 * (e0 * e0 - e1 * e1) > 0.0;
      REQUIRE(approx.valid == positive);
      REQUIRE(approx.profile.size() == 0);
    }
  }
  CHECK_THROWS_AS(extraordinary_sequence(series_for(cases::type_b), 101), ContractError);
}

TEST_CASE("second approximant is close to the converted reference") {
  const Parameters p = cases::type_b;
  const auto& r = reference_for(p);
  const auto inst = convert(r.e0, r.e1, p);
  const auto y = convert_profile(r.profile, inst);
  const auto seq = extraordinary_sequence(series_for(p), 2);
  REQUIRE(seq[1].valid);
  const double dist = normalized_sup_distance(seq[1].profile, y);
  const double res = pii_residual(seq[1].profile, seq[1].instance);
  INFO("distance " << dist << " residual " << res);
  CHECK(dist <= 1e-2);
  CHECK(res <= 1e-2);
}

TEST_CASE("approximant constants approach the reference") {
  for (const Parameters& p : {cases::type_a, cases::type_b}) {
    const auto& r = reference_for(p);
    const auto inst = convert(r.e0, r.e1, p);
    const auto seq = extraordinary_sequence(series_for(p), 100, false);
    const auto& last = seq.back();
    REQUIRE(last.valid);
    const double gap = std::abs(last.instance.a - inst.a) + std::abs(last.instance.b - inst.b) + std::abs(last.instance.c - inst.c);
    INFO("nu=" << p.nu << " gap " << gap);
    CHECK(gap <= 1e-5);
  }
}

TEST_CASE("zero forcing keeps every approximant on the fixed interval") {
  const Parameters p{1.0 / 3.0, -0.2, 3.5, 0.0};
  SeriesState s(p, Grid(257));
  s.extend(6);
  for (const auto& approx : extraordinary_sequence(s, 6)) {
    REQUIRE(approx.valid);
    CHECK(approx.instance.c == 0.0);
    CHECK(std::abs(approx.instance.a - zero_left(p.sigma, p.nu)) <= 1e-9);
    CHECK(std::abs(approx.instance.b - approx.instance.a - zero_length(p.sigma, p.nu)) <= 1e-9);
  }
}
