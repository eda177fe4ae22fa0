#include "mol/corpus.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mol {

namespace {

double bump(double u) {
  const double d = 1.0 - u * u;
  return d > 0.0 ? std::exp(-1.0 / d) * std::exp(1.0) : 0.0;  // peak 1
}

using Rng = std::mt19937_64;

double uni(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

GridFunction make_bump(Rng& rng, const Grid& g) {
  const int nb = 1 + int(uni(rng, 0.0, 2.999));
  std::vector<std::array<double, 4>> parts;  // cx, cy, width, amp
  for (int b = 0; b < nb; ++b) {
    const double cx = uni(rng, g.origin[0] + g.extent * 0.2,
                          g.origin[0] + g.extent * 0.8);
    const double cy = uni(rng, g.origin[1] + g.extent * 0.2,
                          g.origin[1] + g.extent * 0.8);
    double w = uni(rng, g.extent * 0.05, g.extent * 0.3);
    // Keep the support a unit away from the box edge when the box allows
    // it, so unit-scale convolutions of the bump stay interior.
    double dist = std::min(cx - g.origin[0], g.origin[0] + g.extent - cx);
    if (g.dim == 2)
      dist = std::min(dist,
                      std::min(cy - g.origin[1], g.origin[1] + g.extent - cy));
    w = std::max(g.extent * 0.05, std::min(w, dist - 1.1));
    parts.push_back({cx, cy, w, uni(rng, -2.0, 2.0)});
  }
  return GridFunction::sample(g, [&, parts](const Vec& x) {
    double s = 0.0;
    for (const auto& p : parts) {
      double u = (x[0] - p[0]) / p[2];
      if (g.dim == 2) {
        const double v = (x[1] - p[1]) / p[2];
        u = std::sqrt(u * u + v * v);
      }
      s += p[3] * bump(u);
    }
    return s;
  });
}

GridFunction make_spike(Rng& rng, const Grid& g) {
  const int nb = 1 + int(uni(rng, 0.0, 2.999));
  std::vector<std::array<double, 4>> parts;
  for (int b = 0; b < nb; ++b)
    parts.push_back({uni(rng, g.origin[0] + g.extent * 0.15,
                         g.origin[0] + g.extent * 0.85),
                     uni(rng, g.origin[1] + g.extent * 0.15,
                         g.origin[1] + g.extent * 0.85),
                     uni(rng, g.h() * 2.0, g.h() * 12.0),
                     uni(rng, 0.5, 4.0) * (uni(rng, 0.0, 1.0) < 0.5 ? -1 : 1)});
  return GridFunction::sample(g, [&, parts](const Vec& x) {
    double s = 0.0;
    for (const auto& p : parts) {
      double r = std::abs(x[0] - p[0]);
      if (g.dim == 2) r = std::max(r, std::abs(x[1] - p[1]));
      s += p[3] * std::max(0.0, 1.0 - r / p[2]);
    }
    return s;
  });
}

GridFunction make_sawtooth(Rng& rng, const Grid& g) {
  const double period = uni(rng, g.extent * 0.1, g.extent * 0.5);
  const double phase = uni(rng, 0.0, period);
  const double amp = uni(rng, 0.5, 2.0);
  // Windowed so the function vanishes near the box edge.
  return GridFunction::sample(g, [&](const Vec& x) {
    double u = (x[0] - g.origin[0] + phase) / period;
    double saw = 2.0 * (u - std::floor(u)) - 1.0;
    if (g.dim == 2) {
      double v = (x[1] - g.origin[1] + phase) / period;
      saw *= 2.0 * (v - std::floor(v)) - 1.0;
    }
    double w = 1.0;
    for (int d = 0; d < g.dim; ++d) {
      const double c = (x[d] - g.origin[d]) / g.extent;  // in [0,1]
      w *= bump(2.0 * c - 1.0);
    }
    return amp * saw * w;
  });
}

GridFunction make_noise(Rng& rng, const Grid& g, int cutoff) {
  // Band-limited field: random low-frequency cosine modes.
  struct Mode {
    double kx, ky, phase, amp;
  };
  std::vector<Mode> modes;
  for (int m = 1; m <= cutoff; ++m) {
    Mode mo;
    mo.kx = 2.0 * M_PI * m / g.extent;
    mo.ky = g.dim == 2 ? 2.0 * M_PI * int(uni(rng, 0.0, cutoff)) / g.extent : 0.0;
    mo.phase = uni(rng, 0.0, 2.0 * M_PI);
    mo.amp = uni(rng, -1.0, 1.0) / (1.0 + m);
    modes.push_back(mo);
  }
  return GridFunction::sample(g, [&, modes](const Vec& x) {
    double s = 0.0;
    for (const auto& mo : modes)
      s += mo.amp * std::cos(mo.kx * (x[0] - g.origin[0]) +
                             mo.ky * (x[1] - g.origin[1]) + mo.phase);
    double w = 1.0;
    for (int d = 0; d < g.dim; ++d)
      w *= bump(2.0 * (x[d] - g.origin[d]) / g.extent - 1.0);
    return s * w;
  });
}

GridFunction make_atom(Rng& rng, const Grid& g) {
  // Mean-zero two-box profile on a small cube, sup-normalized to 1/|Q|.
  const double side = uni(rng, g.h() * 8.0, std::min(1.0, g.extent * 0.25));
  Vec c{uni(rng, g.origin[0] + side, g.origin[0] + g.extent - side),
        uni(rng, g.origin[1] + side, g.origin[1] + g.extent - side)};
  const Cube q{c, side};
  const double amp = 1.0 / q.volume(g.dim);
  return GridFunction::sample(g, [&](const Vec& x) {
    if (!q.contains(x, g.dim)) return 0.0;
    return x[0] < c[0] ? amp : -amp;
  });
}

}  // namespace

std::vector<TaggedFunction> generate_corpus(std::uint64_t seed,
                                            const CorpusSpec& spec,
                                            const Grid& grid) {
  Rng rng(seed);
  std::vector<TaggedFunction> out;
  for (const std::string& fam : spec.families) {
    for (int i = 0; i < spec.per_family; ++i) {
      GridFunction f;
      if (fam == "bumps")
        f = make_bump(rng, grid);
      else if (fam == "spikes")
        f = make_spike(rng, grid);
      else if (fam == "sawtooth")
        f = make_sawtooth(rng, grid);
      else if (fam == "noise")
        f = make_noise(rng, grid, spec.noise_cutoff);
      else if (fam == "atoms")
        f = make_atom(rng, grid);
      else
        throw std::domain_error("unknown corpus family: " + fam);
      out.push_back({std::move(f), fam + "#" + std::to_string(i)});
    }
  }
  return out;
}

}  // namespace mol
