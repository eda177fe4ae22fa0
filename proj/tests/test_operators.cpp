#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "mol/operators.hpp"

using namespace mol;

namespace {

const Grid kGrid{1, vec1(-4.0), 8.0, 512};

Symbol constant_symbol() {
  Symbol s;
  s.eval = [](double, double) { return 1.0; };
  s.declared_bound = 1.0;
  s.name = "identity";
  return s;
}

}  // namespace

TEST_CASE("riesz kernel structure") {
  const LocalRieszKernel k = make_riesz_kernel(kGrid, 1);
  const int W = k.half_width;
  REQUIRE(static_cast<int>(k.samples.size()) == 2 * W + 1);
  CHECK(k.samples[W] == 0.0);
  double sum = 0.0;
  for (int m = 1; m <= W; ++m) {
    CHECK(k.samples[W + m] == -k.samples[W - m]);
    sum += k.samples[W + m] + k.samples[W - m];
  }
  CHECK(sum == 0.0);
  // Q(0,2) needs at least 16 cells across.
  CHECK_THROWS(make_riesz_kernel(Grid{1, vec1(-4.0), 8.0, 32}, 1));
  CHECK_THROWS(make_riesz_kernel(kGrid, 2));
}

TEST_CASE("riesz annihilates constants in the interior") {
  const GridFunction one =
      GridFunction::sample(kGrid, [](const Vec&) { return 1.0; });
  const GridFunction r = riesz_local(one, 1);
  const int W = make_riesz_kernel(kGrid, 1).half_width;
  for (std::int64_t i = W; i < kGrid.size() - W; ++i)
    CHECK(std::abs(r[i]) <= 1e-12);
}

TEST_CASE("odd kernel kills even profiles at their center") {
  const std::int64_t ic = 256;
  const Vec c = kGrid.cell_center(ic);
  const GridFunction f = GridFunction::sample(kGrid, [&](const Vec& x) {
    const double u = x[0] - c[0];
    const double d = 1.0 - u * u;
    return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
  });
  const GridFunction r = riesz_local(f, 1);
  CHECK(std::abs(r[ic]) <= 1e-12 * f.max_abs());
}

TEST_CASE("far field of a point mass matches the kernel law") {
  // A single cell of mass h seen from distance d inside the flat part of
  // the cutoff gives h/d.
  GridFunction spike = GridFunction::zeros(kGrid);
  spike[256] = 1.0;
  const GridFunction r = riesz_local(spike, 1);
  const double h = kGrid.h();
  for (int m : {4, 8, 16, 24}) {
    CHECK(r[256 + m] == doctest::Approx(h / (m * h)).epsilon(1e-12));
    CHECK(r[256 - m] == doctest::Approx(-h / (m * h)).epsilon(1e-12));
  }
}

TEST_CASE("riesz transform is linear") {
  const GridFunction f = GridFunction::sample(
      kGrid, [](const Vec& x) { return std::sin(3.0 * x[0]); });
  const GridFunction g = GridFunction::sample(
      kGrid, [](const Vec& x) { return std::exp(-x[0] * x[0]); });
  GridFunction fg = f;
  for (std::int64_t i = 0; i < kGrid.size(); ++i) fg[i] += g[i];
  const GridFunction rf = riesz_local(f, 1);
  const GridFunction rg = riesz_local(g, 1);
  const GridFunction rfg = riesz_local(fg, 1);
  for (std::int64_t i = 0; i < kGrid.size(); i += 11)
    CHECK(rfg[i] == doctest::Approx(rf[i] + rg[i]).epsilon(1e-10));
}

TEST_CASE("symbol one acts as the identity") {
  const Grid g{1, vec1(-4.0), 8.0, 128};
  const GridFunction f = GridFunction::sample(g, [](const Vec& x) {
    return std::cos(2.0 * x[0]) + 0.3 * x[0];
  });
  const GridFunction out = psdo_apply(constant_symbol(), f);
  double err = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    err = std::max(err, std::abs(out[i] - f[i]));
  CHECK(err <= 1e-9 * f.max_abs());
}

TEST_CASE("x-only symbols multiply pointwise") {
  const Grid g{1, vec1(-4.0), 8.0, 128};
  const GridFunction f = GridFunction::sample(
      g, [](const Vec& x) { return std::sin(5.0 * x[0]); });
  Symbol a;
  a.eval = [](double x, double) { return std::sin(x); };
  a.name = "a(x)";
  const GridFunction out = psdo_apply(a, f);
  double err = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double want = std::sin(g.cell_center(i)[0]) * f[i];
    err = std::max(err, std::abs(out[i] - want));
  }
  CHECK(err <= 1e-9 * f.max_abs());
}

TEST_CASE("frequency quantization against a direct oracle") {
  // Independent double sum for sigma(xi) = (1+xi^2)^{-1/2}.
  const Grid g{1, vec1(-4.0), 8.0, 64};
  const GridFunction f = GridFunction::sample(
      g, [](const Vec& x) { return std::exp(-x[0] * x[0] / 2.0); });
  Symbol s;
  s.eval = [](double, double xi) { return 1.0 / std::sqrt(1.0 + xi * xi); };
  s.name = "smoothing";
  const GridFunction got = psdo_apply(s, f);

  const int M = g.npts;
  const double h = g.h();
  const double dxi = 1.0 / (M * h);
  for (int k = 0; k < M; k += 5) {
    const double x = g.cell_center(k)[0];
    std::complex<double> acc(0.0, 0.0);
    for (int m = 0; m < M; ++m) {
      const double xi = (m - M / 2) * dxi;
      std::complex<double> fhat(0.0, 0.0);
      for (int j = 0; j < M; ++j) {
        const double y = g.cell_center(j)[0];
        fhat += f[j] * std::exp(std::complex<double>(0.0, -2.0 * M_PI * xi * y));
      }
      acc += s.eval(x, xi) * fhat * h *
             std::exp(std::complex<double>(0.0, 2.0 * M_PI * xi * x));
    }
    CHECK(got[k] == doctest::Approx((acc * dxi).real()).epsilon(1e-10));
  }
}

TEST_CASE("symbol class estimates") {
  const std::vector<double> xs{-1.0, 0.0, 1.0};
  const std::vector<double> xis{0.0, 0.5, 1.0, 2.0, 4.0};
  const SymbolCheck ok = check_symbol(constant_symbol(), xs, xis);
  CHECK(ok.ok);
  CHECK(ok.worst_constant == doctest::Approx(1.0).epsilon(1e-6));

  Symbol growing;
  growing.eval = [](double, double xi) { return xi; };
  growing.declared_bound = 1.0;
  growing.name = "xi";
  CHECK(!check_symbol(growing, xs, xis).ok);
}

TEST_CASE("boundedness experiment bookkeeping") {
  const Grid g{1, vec1(-4.0), 8.0, 128};
  const MaximalParams params = default_params(g);
  std::vector<GridFunction> corpus;
  corpus.push_back(GridFunction::sample(
      g, [](const Vec& x) { return std::cos(x[0]); }));
  corpus.push_back(GridFunction::zeros(g));
  auto identity = [](const GridFunction& u) { return u; };
  const BoundednessReport rep = boundedness_experiment(
      identity, growth_power(1.0, 1), corpus, OperatorNorm::WeightedL2, params);
  REQUIRE(rep.ratios.size() == 1);
  CHECK(rep.skipped == 1);
  CHECK(rep.ratios[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(boundedness_experiment(identity, growth_power(1.0, 1),
                                      std::span<const GridFunction>{},
                                      OperatorNorm::WeightedL2, params));
}
