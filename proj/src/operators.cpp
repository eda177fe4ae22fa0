#include "mol/operators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "mol/bmo.hpp"
#include "mol/norms.hpp"
#include "mol/weights.hpp"

namespace mol {

namespace {

// 1 on Q(0,1), 0 off Q(0,2), C2 in between (per axis, l-inf geometry).
double riesz_cutoff(const Vec& x, int dim) {
  const double r = linf_norm(x, dim);
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double u = (r - 0.5) / 0.5;
  return 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

}  // namespace

LocalRieszKernel make_riesz_kernel(const Grid& grid, int direction) {
  if (direction < 1 || direction > grid.dim)
    throw std::domain_error("riesz direction out of range");
  const double h = grid.h();
  if (2.0 / h < 16.0)
    throw std::domain_error("grid too coarse to resolve the Q(0,2) cutoff");
  const int W = int(std::floor(1.0 / h)) + 1;
  LocalRieszKernel k;
  k.direction = direction;
  k.half_width = W;
  const double cell = std::pow(h, grid.dim);
  auto eval = [&](const Vec& x) {
    const double r = l2_norm(x, grid.dim);
    if (r == 0.0) return 0.0;  // principal value: center cell zeroed
    return x[direction - 1] / std::pow(r, grid.dim + 1) *
           riesz_cutoff(x, grid.dim) * cell;
  };
  if (grid.dim == 1) {
    k.samples.assign(2 * W + 1, 0.0);
    for (int m = 1; m <= W; ++m) {
      const double v = eval(vec1(m * h));
      k.samples[W + m] = v;
      k.samples[W - m] = -v;  // exact oddness, cell sum is exactly zero
    }
  } else {
    const int side = 2 * W + 1;
    k.samples.assign(side * side, 0.0);
    // Fill one half-lattice and mirror with flipped sign.
    for (int my = -W; my <= W; ++my)
      for (int mx = -W; mx <= W; ++mx) {
        if (mx < 0 || (mx == 0 && my <= 0)) continue;
        const double v = eval(vec2(mx * h, my * h));
        k.samples[(my + W) * side + (mx + W)] = v;
        k.samples[(-my + W) * side + (-mx + W)] = -v;
      }
  }
  return k;
}

GridFunction riesz_local(const GridFunction& f, int direction) {
  const Grid& g = f.grid();
  const LocalRieszKernel k = make_riesz_kernel(g, direction);
  const int W = k.half_width;
  GridFunction out = GridFunction::zeros(g);
  if (g.dim == 1) {
    for (int i = 0; i < g.npts; ++i) {
      double s = 0.0;
      for (int m = std::max(-W, i - g.npts + 1); m <= std::min(W, i); ++m)
        s += k.samples[m + W] * f[i - m];
      out[i] = s;
    }
  } else {
    const int side = 2 * W + 1;
    for (int iy = 0; iy < g.npts; ++iy)
      for (int ix = 0; ix < g.npts; ++ix) {
        double s = 0.0;
        for (int my = std::max(-W, iy - g.npts + 1); my <= std::min(W, iy); ++my)
          for (int mx = std::max(-W, ix - g.npts + 1); mx <= std::min(W, ix); ++mx)
            s += k.samples[(my + W) * side + (mx + W)] * f[g.index(ix - mx, iy - my)];
        out[g.index(ix, iy)] = s;
      }
  }
  return out;
}

SymbolCheck check_symbol(const Symbol& sigma, std::span<const double> xs,
                         std::span<const double> xis) {
  SymbolCheck out;
  // Step balances truncation against round-off for stencils up to order
  // 2*order_cap: (dx*dxi)^3 must stay far above machine epsilon.
  const double dx = 5e-2, dxi = 5e-2;
  // Central difference table in both variables up to order_cap.
  const int cap = sigma.order_cap;
  for (double x : xs)
    for (double xi : xis) {
      for (int a = 0; a <= cap; ++a)
        for (int b = 0; b <= cap; ++b) {
          // d_x^a d_xi^b via tensored central differences.
          double acc = 0.0;
          for (int p = 0; p <= a; ++p)
            for (int q = 0; q <= b; ++q) {
              const double sign = ((a - p) + (b - q)) % 2 ? -1.0 : 1.0;
              const double binom_a = std::round(std::tgamma(a + 1) /
                                                (std::tgamma(p + 1) * std::tgamma(a - p + 1)));
              const double binom_b = std::round(std::tgamma(b + 1) /
                                                (std::tgamma(q + 1) * std::tgamma(b - q + 1)));
              acc += sign * binom_a * binom_b *
                     sigma.eval(x + (p - a / 2.0) * dx, xi + (q - b / 2.0) * dxi);
            }
          acc /= std::pow(dx, a) * std::pow(dxi, b);
          const double c = std::abs(acc) * std::pow(1.0 + std::abs(xi), b);
          if (c > out.worst_constant) {
            out.worst_constant = c;
            out.worst_a = a;
            out.worst_b = b;
            out.worst_x = x;
            out.worst_xi = xi;
          }
        }
    }
  out.ok = out.worst_constant <= sigma.declared_bound;
  return out;
}

GridFunction psdo_apply(const Symbol& sigma, const GridFunction& f) {
  const Grid& g = f.grid();
  if (g.dim != 1) throw std::domain_error("psdo_apply supports 1D grids only");
  const int M = g.npts;
  const double h = g.h();
  const double dxi = 1.0 / (M * h);
  using cd = std::complex<double>;
  const cd I(0.0, 1.0);
  // Centered frequency lattice xi_m = (m - M/2) / (M h).
  std::vector<cd> fhat(M, cd(0.0, 0.0));
  for (int m = 0; m < M; ++m) {
    const double xi = (m - M / 2) * dxi;
    cd s(0.0, 0.0);
    for (int k = 0; k < M; ++k) {
      const double x = g.cell_center(k)[0];
      s += f[k] * std::exp(-2.0 * M_PI * I * xi * x);
    }
    fhat[m] = s * h;
  }
  GridFunction out = GridFunction::zeros(g);
  for (int k = 0; k < M; ++k) {
    const double x = g.cell_center(k)[0];
    cd s(0.0, 0.0);
    for (int m = 0; m < M; ++m) {
      const double xi = (m - M / 2) * dxi;
      s += sigma.eval(x, xi) * std::exp(2.0 * M_PI * I * xi * x) * fhat[m];
    }
    out[k] = (s * dxi).real();
  }
  return out;
}

BoundednessReport boundedness_experiment(
    const std::function<GridFunction(const GridFunction&)>& op,
    const GrowthFunction& phi, std::span<const GridFunction> corpus,
    OperatorNorm which, const MaximalParams& params) {
  if (corpus.empty()) throw std::domain_error("empty corpus");
  BoundednessReport rep;
  for (const GridFunction& f : corpus) {
    double nf, nof;
    GridFunction of = op(f);
    switch (which) {
      case OperatorNorm::HPhi:
        nf = h_phi_quasinorm(f, phi, params, MaximalKind::Vertical);
        nof = h_phi_quasinorm(of, phi, params, MaximalKind::Vertical);
        break;
      case OperatorNorm::BmoPhi: {
        const CubeLattice lat = uncapped_lattice(f.grid(), 8);
        nf = bmo_phi_norm(f, phi, 0, lat);
        nof = bmo_phi_norm(of, phi, 0, lat);
        break;
      }
      case OperatorNorm::WeightedL2: {
        auto wl2 = [&](const GridFunction& u) {
          const Grid& gr = u.grid();
          double s = 0.0;
          for (std::int64_t i = 0; i < gr.size(); ++i)
            s += u[i] * u[i] * phi.eval(gr.cell_center(i), 1.0);
          return std::sqrt(s * std::pow(gr.h(), gr.dim));
        };
        nf = wl2(f);
        nof = wl2(of);
        break;
      }
      default:
        throw std::logic_error("unknown norm kind");
    }
    if (nf == 0.0) {
      ++rep.skipped;
      continue;
    }
    rep.ratios.push_back(nof / nf);
    rep.worst = std::max(rep.worst, nof / nf);
  }
  return rep;
}

}  // namespace mol
