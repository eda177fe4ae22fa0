#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mol/growth.hpp"

using namespace mol;

TEST_CASE("power family scales exactly") {
  const GrowthFunction phi = growth_power(0.5, 1);
  CHECK(phi.eval(vec1(3.0), 4.0) == doctest::Approx(2.0));
  CHECK(phi.x_independent);
  const Grid g{1, vec1(-4.0), 8.0, 64};
  const auto lo = default_type_samples(g, TypeSide::Lower);
  const auto hi = default_type_samples(g, TypeSide::Upper);
  // phi(st) = s^p phi(t) exactly, so both worst constants are 1.
  CHECK(check_uniform_type(phi, 0.5, TypeSide::Lower, lo).worst_constant ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(check_uniform_type(phi, 1.0, TypeSide::Upper, hi).holds);
}

TEST_CASE("theta family") {
  const GrowthFunction th = growth_theta(1);
  CHECK(th.eval(vec1(0.0), 1.0) ==
        doctest::Approx(1.0 / std::log(std::exp(1.0) + 1.0)).epsilon(1e-14));
  CHECK(th.eval(vec1(7.0), 1.0) == th.eval(vec1(0.0), 1.0));
  CHECK(th.eval(vec1(0.0), 0.0) == 0.0);
  const Grid g{1, vec1(-4.0), 8.0, 64};
  const auto lo = default_type_samples(g, TypeSide::Lower);
  const auto hi = default_type_samples(g, TypeSide::Upper);
  CHECK(check_uniform_type(th, 0.5, TypeSide::Lower, lo).holds);
  CHECK(check_uniform_type(th, 1.0, TypeSide::Upper, hi).holds);
}

TEST_CASE("log family type and guards") {
  const GrowthFunction lg = growth_log(1.0, 1.0, 1.0, 1);
  const Grid g{1, vec1(-4.0), 8.0, 64};
  const auto lo = default_type_samples(g, TypeSide::Lower);
  // i(phi) = alpha is an infimum, not attained: the declared constant is
  // generous and the sampled estimate sits close below alpha.
  CHECK(check_uniform_type(lg, 1.0, TypeSide::Lower, lo).holds);
  const double est = estimate_lower_type_index(lg, lo, 1e-4, 8.0);
  CHECK(est == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS(growth_log(1.5, 1.0, 1.0, 1));
  CHECK_THROWS(growth_log(1.0, -1.0, 1.0, 1));
  CHECK_THROWS(growth_log(1.0, 1.0, 5.0, 1));
}

TEST_CASE("moment degree") {
  // m(phi) = floor(n (q/p - 1)).
  CHECK(growth_power(1.0, 1).moment_degree() == 0);
  CHECK(growth_phi_alpha_weighted(1.0, 1.0, 1.0, 1).moment_degree() == 1);
  GrowthFunction g = growth_power(0.5, 2);
  g.declared_q = 2.0;
  CHECK(g.moment_degree() == 6);
}

TEST_CASE("phi measure matches Lebesgue for phi = t") {
  const GrowthFunction phi = growth_power(1.0, 1);
  const Grid g{1, vec1(-1.0), 2.0, 8};
  CHECK(phi_measure(phi, g, Cube{vec1(0.0), 1.0}, 3.0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(phi_measure(phi, g, 3.0) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("sample validation rejects bad families") {
  GrowthFunction bad;
  bad.eval = [](const Vec&, double t) { return -t; };
  CHECK_THROWS(bad.validate_samples());
  GrowthFunction dec;
  dec.eval = [](const Vec&, double t) { return t == 0.0 ? 0.0 : 1.0 / (1.0 + t); };
  CHECK_THROWS(dec.validate_samples());
}

TEST_CASE("json parsing") {
  const GrowthFunction th = parse_growth(R"({"family":"theta"})", 1);
  CHECK(th.name == "theta");
  const GrowthFunction lg =
      parse_growth(R"({"family":"log","alpha":1.0,"beta":1.0,"gamma":1.0})", 2);
  CHECK(lg.dim == 2);
  const GrowthFunction pr = parse_growth(
      R"({"family":"product","weight":"exp_abs","cap":10.0,"p":0.8})", 1);
  CHECK(pr.eval(vec1(0.0), 1.0) == doctest::Approx(1.0));
  CHECK(pr.eval(vec1(100.0), 1.0) == doctest::Approx(10.0));  // capped weight
  CHECK_THROWS(parse_growth(R"({"family":"nope"})", 1));
  CHECK_THROWS(parse_growth("not json", 1));
}

TEST_CASE("dyadic samples") {
  const auto s = dyadic_samples(-2, 2);
  REQUIRE(s.size() == 6);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 0.25);
  CHECK(s[5] == 4.0);
}
