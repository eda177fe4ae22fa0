#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "mol/corpus.hpp"

using namespace mol;

namespace {

const Grid kGrid{1, vec1(-4.0), 8.0, 512};

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
  const CorpusSpec spec;
  const auto a = generate_corpus(42, spec, kGrid);
  const auto b = generate_corpus(42, spec, kGrid);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() ==
          spec.families.size() * static_cast<std::size_t>(spec.per_family));
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].tag == b[k].tag);
    for (std::int64_t i = 0; i < kGrid.size(); ++i)
      CHECK(a[k].values[i] == b[k].values[i]);
  }
  const auto c = generate_corpus(43, spec, kGrid);
  double diff = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::int64_t i = 0; i < kGrid.size(); ++i)
      diff = std::max(diff, std::abs(a[k].values[i] - c[k].values[i]));
  CHECK(diff > 0.0);
}

TEST_CASE("tags name the family and index") {
  CorpusSpec spec;
  spec.families = {"bumps", "atoms"};
  spec.per_family = 2;
  const auto fns = generate_corpus(7, spec, kGrid);
  REQUIRE(fns.size() == 4);
  CHECK(fns[0].tag == "bumps#0");
  CHECK(fns[1].tag == "bumps#1");
  CHECK(fns[2].tag == "atoms#0");
  CHECK(fns[3].tag == "atoms#1");
}

TEST_CASE("spec edge cases") {
  CorpusSpec empty;
  empty.families.clear();
  CHECK(generate_corpus(1, empty, kGrid).empty());
  CorpusSpec bad;
  bad.families = {"fractals"};
  CHECK_THROWS(generate_corpus(1, bad, kGrid));
}

TEST_CASE("noise is band limited") {
  CorpusSpec spec;
  spec.families = {"noise"};
  spec.per_family = 3;
  spec.noise_cutoff = 12;
  const auto fns = generate_corpus(99, spec, kGrid);
  const int M = kGrid.npts;
  for (const auto& tf : fns) {
    // DFT energy above bin 40 should be negligible: the modes stop at the
    // cutoff and the smooth window spreads them only slightly.
    double total = 0.0, high = 0.0;
    for (int m = 0; m < M / 2; ++m) {
      std::complex<double> s(0.0, 0.0);
      for (int i = 0; i < M; ++i)
        s += tf.values[i] *
             std::exp(std::complex<double>(0.0, -2.0 * M_PI * m * i / M));
      const double e = std::norm(s);
      total += e;
      if (m > 40) high += e;
    }
    REQUIRE(total > 0.0);
    CHECK(high / total < 1e-4);
  }
}

TEST_CASE("atom family is nearly mean free and normalized") {
  CorpusSpec spec;
  spec.families = {"atoms"};
  spec.per_family = 6;
  const auto fns = generate_corpus(5, spec, kGrid);
  const double h = kGrid.h();
  for (const auto& tf : fns) {
    double mean = 0.0, vol = 0.0;
    const double sup = tf.values.max_abs();
    REQUIRE(sup > 0.0);
    for (std::int64_t i = 0; i < kGrid.size(); ++i) {
      mean += tf.values[i] * h;
      if (tf.values[i] != 0.0) vol += h;
    }
    // Cell quantization allows one cell of imbalance.
    CHECK(std::abs(mean) <= sup * h * 2.0);
    // sup = 1/|Q| up to the measured support's quantization.
    CHECK(sup * vol == doctest::Approx(1.0).epsilon(0.3));
  }
}
