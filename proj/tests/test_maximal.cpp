#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mol/maximal.hpp"

using namespace mol;

namespace {

const Grid kGrid{1, vec1(-4.0), 8.0, 512};

GridFunction unit_indicator(const Grid& g, double center, double side) {
  const Cube q{vec1(center), side};
  return GridFunction::sample(
      g, [&](const Vec& x) { return q.contains(x, 1) ? 1.0 : 0.0; });
}

}  // namespace

TEST_CASE("psi0 has unit mass") {
  const TestFunction psi = default_psi0(1);
  const Grid g{1, vec1(-2.0), 4.0, 4096};
  const GridFunction s = GridFunction::sample(g, [&](const Vec& x) {
    return psi.eval(x);
  });
  CHECK(integrate(s) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(psi.support_radius == doctest::Approx(1.0));
}

TEST_CASE("scaled convolution of constants stays constant") {
  const TestFunction psi = default_psi0(1);
  const GridFunction one =
      GridFunction::sample(kGrid, [](const Vec&) { return 1.0; });
  for (double t : {1.0, 0.5, 0.25}) {
    const GridFunction c = convolve_scaled(one, psi, t);
    // Away from the box edge the mollified constant is the mass of psi.
    const std::int64_t lo = static_cast<std::int64_t>(2.0 / kGrid.h());
    for (std::int64_t i = lo; i < kGrid.size() - lo; i += 7)
      CHECK(c[i] == doctest::Approx(1.0).epsilon(5e-3));
  }
}

TEST_CASE("local Hardy-Littlewood maximal oracles") {
  // Constant input: every average is the constant.
  const GridFunction one =
      GridFunction::sample(kGrid, [](const Vec&) { return 1.0; });
  const GridFunction m1 = m_loc(one, 1.0);
  for (std::int64_t i = 0; i < kGrid.size(); i += 13)
    CHECK(m1[i] == doctest::Approx(1.0).epsilon(1e-12));

  // Single cell of height 1: best window containing x has the cell plus the
  // minimal number of extra cells, so M f(x) = h / window_width.
  const Grid g{1, vec1(0.0), 1.0, 32};
  GridFunction spike = GridFunction::zeros(g);
  spike[10] = 1.0;
  const GridFunction ms = m_loc(spike, 1.0);
  const double h = g.h();
  CHECK(ms[10] == doctest::Approx(1.0).epsilon(1e-12));
  // x three cells away: the smallest admissible window has 4 cells.
  CHECK(ms[13] == doctest::Approx(h / (4 * h)).epsilon(1e-12));

  // Brute-force comparison on a rough input.
  const GridFunction f = GridFunction::sample(
      g, [](const Vec& x) { return std::sin(17.0 * x[0]) + 0.3; });
  const GridFunction mf = m_loc(f, 0.25);
  const std::int64_t wmax = static_cast<std::int64_t>(std::floor(0.25 / h));
  for (std::int64_t i = 0; i < g.size(); ++i) {
    double best = 0.0;
    for (std::int64_t a = 0; a < g.size(); ++a)
      for (std::int64_t b = a; b < g.size(); ++b) {
        if (i < a || i > b || (b - a + 1) > wmax) continue;
        double s = 0.0;
        for (std::int64_t k = a; k <= b; ++k) s += std::abs(f[k]);
        best = std::max(best, s / static_cast<double>(b - a + 1));
      }
    CHECK(mf[i] == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("vertical maximal rejects mean-zero kernels") {
  TestFunction odd;
  odd.eval = [](const Vec& x) {
    const double d = 1.0 - x[0] * x[0];
    return d > 0.0 ? x[0] * std::exp(-1.0 / d) : 0.0;
  };
  odd.support_radius = 1.0;
  odd.name = "odd";
  const GridFunction f = unit_indicator(kGrid, 0.0, 1.0);
  CHECK_THROWS_AS(vertical_maximal(f, odd, 4), std::invalid_argument);
}

TEST_CASE("nontangential dominates vertical") {
  const Grid g{1, vec1(-4.0), 8.0, 256};
  const GridFunction f = GridFunction::sample(g, [](const Vec& x) {
    const double d = 1.0 - x[0] * x[0];
    return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
  });
  const TestFunction psi = default_psi0(1);
  const GridFunction v = vertical_maximal(f, psi, 5);
  const GridFunction nt = nontangential_maximal(f, psi, 5);
  for (std::int64_t i = 0; i < g.size(); ++i)
    CHECK(nt[i] >= v[i] - 1e-12);
}

TEST_CASE("peetre with no penalty dominates vertical") {
  const Grid g{1, vec1(-2.0), 4.0, 64};
  const GridFunction f = unit_indicator(g, 0.0, 1.0);
  const TestFunction psi = default_psi0(1);
  const GridFunction v = vertical_maximal(f, psi, 3);
  const GridFunction p = peetre_maximal(f, psi, 0.0, 0.0, 3);
  for (std::int64_t i = 0; i < g.size(); ++i)
    CHECK(p[i] >= v[i] - 1e-12);
}

TEST_CASE("dictionary is nested and derivative-normalized") {
  const TestFunctionDictionary d1 = default_dictionary(1, 4, 1.0);
  const TestFunctionDictionary d4 = default_dictionary(1, 4, 4.0);
  CHECK(d1.members.size() == 6);
  CHECK(d4.members.size() == 18);
  CHECK(d1.version == d4.version);
  for (const TestFunction& m : d1.members) {
    bool found = false;
    for (const TestFunction& w : d4.members) found = found || w.name == m.name;
    CHECK(found);
  }
  // Spot-check the normalization: sampled sup of each member is <= ~1.
  for (const TestFunction& m : d1.members) {
    double sup = 0.0;
    for (int k = -200; k <= 200; ++k)
      sup = std::max(sup, std::abs(m.eval(vec1(k * m.support_radius / 200.0))));
    CHECK(sup <= 1.05);
  }
}

TEST_CASE("exponential-kernel operator oracle") {
  // f = chi_[1,2], B = 1: K f(0) = int_1^2 2^{-y} dy = (2^{-1}-2^{-2})/ln 2.
  const Grid g{1, vec1(-4.0), 8.0, 1024};
  const GridFunction f = unit_indicator(g, 1.5, 1.0);
  const GridFunction k = k_b_operator(f, 1.0);
  const double expect = (0.5 - 0.25) / std::log(2.0);
  const std::int64_t i0 = static_cast<std::int64_t>((0.0 - (-4.0)) / g.h());
  // The evaluation point sits half a cell off zero, hence the loose band.
  CHECK(k[i0] == doctest::Approx(expect).epsilon(1e-2));
}

TEST_CASE("parameter validation and quasinorm of zero") {
  MaximalParams p;
  p.t_grid = {0.5};
  p.j_max = -1;
  CHECK_THROWS(p.validate());
  p.j_max = 3;
  p.t_grid = {1.5};
  CHECK_THROWS(p.validate());
  p.t_grid = {0.5};
  p.N = 1;
  CHECK_THROWS(p.validate());

  const MaximalParams def = default_params(kGrid);
  def.validate();
  const GridFunction z = GridFunction::zeros(kGrid);
  CHECK(h_phi_quasinorm(z, growth_theta(1), def, MaximalKind::Vertical) == 0.0);
}
