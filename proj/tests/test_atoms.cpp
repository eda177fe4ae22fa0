#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mol/atoms.hpp"
#include "mol/norms.hpp"

using namespace mol;

namespace {

const Grid kGrid{1, vec1(-4.0), 8.0, 512};

// Mean-zero two-box profile on the cube: +1 left half, -1 right half.
Atom two_box_atom(const GrowthFunction& phi) {
  const Cube q{vec1(0.0), 0.5};
  Atom a;
  a.kind = Atom::Kind::CubeAtom;
  a.cube = q;
  a.s = 0;
  a.values = GridFunction::sample(kGrid, [&](const Vec& x) {
    if (!q.contains(x, 1)) return 0.0;
    return x[0] < 0.0 ? 1.0 : -1.0;
  });
  a.norm = 1.0;
  a.scale = chi_norm(q, phi, kGrid);
  return a;
}

}  // namespace

TEST_CASE("a mean-zero two-box profile is a valid atom") {
  const GrowthFunction phi = growth_theta(1);
  const auto ts = dyadic_samples(-8, 8);
  const Atom a = two_box_atom(phi);
  const AtomValidation v = validate_atom(a, phi, ts);
  CHECK(v.valid);
  CHECK(v.violations.empty());
}

TEST_CASE("tampered atoms are rejected with named violations") {
  const GrowthFunction phi = growth_theta(1);
  const auto ts = dyadic_samples(-8, 8);

  Atom small_scale = two_box_atom(phi);
  small_scale.scale /= 2.0;
  const AtomValidation v1 = validate_atom(small_scale, phi, ts);
  CHECK(!v1.valid);
  bool norm_hit = false;
  for (const auto& m : v1.violations)
    norm_hit = norm_hit || m.find("norm exceeds") != std::string::npos;
  CHECK(norm_hit);

  // Shift the profile so the mean is off while the sup bound still holds.
  Atom shifted = two_box_atom(phi);
  for (std::int64_t i = 0; i < kGrid.size(); ++i)
    if (shifted.values[i] != 0.0) shifted.values[i] += 0.5;
  shifted.scale *= 1.5;
  const AtomValidation v2 = validate_atom(shifted, phi, ts);
  CHECK(!v2.valid);
  bool moment_hit = false;
  for (const auto& m : v2.violations)
    moment_hit = moment_hit || m.find("moment") != std::string::npos;
  CHECK(moment_hit);

  Atom leaky = two_box_atom(phi);
  leaky.values[0] = 1.0;  // far outside the cube
  const AtomValidation v3 = validate_atom(leaky, phi, ts);
  CHECK(!v3.valid);
  bool leak_hit = false;
  for (const auto& m : v3.violations)
    leak_hit = leak_hit || m.find("support") != std::string::npos;
  CHECK(leak_hit);
}

TEST_CASE("lambda oracle for a single Lebesgue atom") {
  // phi = t: sum = |Q| norm / lambda = 1, so lambda = norm |Q|.
  const GrowthFunction phi = growth_power(1.0, 1);
  Atom a = two_box_atom(phi);
  a.cube = Cube{vec1(0.0), 1.0};
  a.norm = 2.0;
  std::vector<Atom> atoms{a};
  CHECK(lambda_q(atoms, std::nullopt, phi, kGrid) ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK(lambda_q(std::span<const Atom>{}, std::nullopt, phi, kGrid) == 0.0);
}

TEST_CASE("atomic decomposition round trip on a bump") {
  const Grid g{1, vec1(-4.0), 8.0, 256};
  const GridFunction f = GridFunction::sample(g, [](const Vec& x) {
    const double d = 1.0 - x[0] * x[0];
    return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
  });
  const GrowthFunction phi = growth_theta(1);

  // f itself is a continuous stand-in for the maximal field.
  int k_hi = -60;
  while (std::ldexp(1.0, k_hi) < f.max_abs()) ++k_hi;
  const AtomicDecomposition d =
      atomic_decompose(f, phi, 1, f, k_hi - 6, k_hi);
  REQUIRE(!d.atoms.empty());
  REQUIRE(d.single_atom.has_value());

  // The telescoping sum reproduces f up to round-off.
  CHECK(d.residual.max_abs() <= 1e-10 * f.max_abs());
  GridFunction rec = reconstruct(d, g);
  double err = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    err = std::max(err, std::abs(rec[i] + d.residual[i] - f[i]));
  CHECK(err <= 1e-12 * f.max_abs());

  CHECK(d.lambda > 0.0);
  CHECK(d.c10 > 0.0);
  REQUIRE(d.levels.size() == d.atoms.size());
  for (int k : d.levels) {
    CHECK(k >= k_hi - 6);
    CHECK(k < k_hi);
  }
  const auto ts = dyadic_samples(-8, 8);
  for (const Atom& a : d.atoms) {
    const AtomValidation v = validate_atom(a, phi, ts);
    for (const auto& m : v.violations) INFO(m);
    CHECK(v.valid);
  }
  CHECK(validate_atom(*d.single_atom, phi, ts).valid);

  // The finite atomic norm over this one candidate is its lambda.
  std::vector<AtomicDecomposition> cands;
  cands.push_back(d);
  CHECK(finite_atomic_norm(f, cands) == doctest::Approx(d.lambda));
  CHECK_THROWS(finite_atomic_norm(f, std::span<const AtomicDecomposition>{}));
}

TEST_CASE("atomic decomposition guards") {
  const Grid g{1, vec1(-4.0), 8.0, 128};
  const GridFunction f = GridFunction::sample(g, [](const Vec& x) {
    const double d = 1.0 - x[0] * x[0];
    return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
  });
  const GrowthFunction phi = growth_theta(1);
  // Top height below the max leaves the top superlevel set nonempty.
  CHECK_THROWS_AS(atomic_decompose(f, phi, 0, f, -9, -3), std::runtime_error);
  CHECK_THROWS_AS(atomic_decompose(f, phi, 0, f, -1, -1), std::domain_error);
}
