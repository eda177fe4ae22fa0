#include "mol/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mol {

namespace {

// Indices of the cells of Q, plus midpoint sums of w and w^{-p'/p}.
struct CubeScan {
  double vol = 0.0;
  double mean_w = 0.0;       // |Q|^{-1} int_Q w
  double mean_dual = 0.0;    // |Q|^{-1} int_Q w^{-p'/p}
  double min_w = 0.0;
};

template <typename WeightAt>
CubeScan scan_cube(const Grid& g, const Cube& q, double p, WeightAt w_at) {
  const double cell = std::pow(g.h(), g.dim);
  double sw = 0.0, sd = 0.0, mn = 0.0;
  std::int64_t count = 0;
  const double dual_exp = p > 1.0 ? 1.0 / (p - 1.0) : 0.0;  // p'/p
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Vec x = g.cell_center(i);
    if (!q.contains(x, g.dim)) continue;
    const double w = w_at(x, i);
    if (!(w > 0.0)) throw std::domain_error("weight must be positive on every cell");
    sw += w;
    if (p > 1.0) sd += std::pow(w, -dual_exp);
    mn = count == 0 ? w : std::min(mn, w);
    ++count;
  }
  CubeScan s;
  if (count == 0) return s;
  s.vol = count * cell;
  s.mean_w = sw * cell / s.vol;
  s.mean_dual = p > 1.0 ? sd * cell / s.vol : 0.0;
  s.min_w = mn;
  return s;
}

template <typename WeightAt>
double ap_ratio(const Grid& g, const Cube& q, double p, WeightAt w_at) {
  const CubeScan s = scan_cube(g, q, p, w_at);
  if (s.vol == 0.0) return 0.0;
  if (p == 1.0) return s.mean_w / s.min_w;
  // |Q|^{-p}(int w)(int w^{-p'/p})^{p-1} = mean_w * mean_dual^{p-1}.
  return s.mean_w * std::pow(s.mean_dual, p - 1.0);
}

}  // namespace

void CubeLattice::validate(int dim) const {
  if (cubes.empty()) throw std::domain_error("cube lattice is empty");
  for (const Cube& q : cubes)
    if (q.volume(dim) > size_cap * (1.0 + 1e-12))
      throw std::domain_error("lattice cube exceeds the size cap");
}

namespace {

CubeLattice build_lattice(const Grid& grid, double size_cap, int center_stride,
                          bool capped) {
  if (center_stride < 1) throw std::domain_error("center stride must be >= 1");
  CubeLattice lat;
  lat.size_cap = capped ? size_cap : std::pow(grid.extent, grid.dim);
  const double h = grid.h();
  for (double side = h; side <= grid.extent * (1.0 + 1e-12); side *= 2.0) {
    if (capped && std::pow(side, grid.dim) > size_cap * (1.0 + 1e-12)) break;
    auto axis_ok = [&](double c) {
      return c - side / 2 >= grid.origin[0] - 1e-12 &&
             c + side / 2 <= grid.origin[0] + grid.extent + 1e-12;
    };
    for (int i = 0; i < grid.npts; i += center_stride) {
      if (grid.dim == 1) {
        const Vec c = grid.cell_center(i);
        if (axis_ok(c[0])) lat.cubes.push_back(Cube{c, side});
      } else {
        for (int j = 0; j < grid.npts; j += center_stride) {
          const Vec c = grid.cell_center(grid.index(i, j));
          const bool ok_y = c[1] - side / 2 >= grid.origin[1] - 1e-12 &&
                            c[1] + side / 2 <= grid.origin[1] + grid.extent + 1e-12;
          if (axis_ok(c[0]) && ok_y) lat.cubes.push_back(Cube{c, side});
        }
      }
    }
  }
  lat.validate(grid.dim);
  return lat;
}

}  // namespace

CubeLattice default_lattice(const Grid& grid, double size_cap,
                            int center_stride) {
  return build_lattice(grid, size_cap, center_stride, true);
}

CubeLattice uncapped_lattice(const Grid& grid, int center_stride) {
  return build_lattice(grid, 0.0, center_stride, false);
}

double a_p_loc_constant(const GridFunction& w, double p,
                        const CubeLattice& lattice) {
  if (p < 1.0) throw std::domain_error("a_p_loc_constant needs p >= 1");
  const Grid& g = w.grid();
  lattice.validate(g.dim);
  double worst = 0.0;
  for (const Cube& q : lattice.cubes)
    worst = std::max(worst, ap_ratio(g, q, p, [&](const Vec&, std::int64_t i) {
                       return w[i];
                     }));
  return worst;
}

double a_p_loc_constant(const GrowthFunction& phi, const Grid& grid,
                        std::span<const double> t_samples, double p,
                        const CubeLattice& lattice) {
  if (p < 1.0) throw std::domain_error("a_p_loc_constant needs p >= 1");
  if (t_samples.empty()) throw std::domain_error("need at least one t-sample");
  lattice.validate(grid.dim);
  double worst = 0.0;
  for (double t : t_samples) {
    if (!(t > 0.0)) continue;
    for (const Cube& q : lattice.cubes)
      worst = std::max(
          worst, ap_ratio(grid, q, p, [&](const Vec& x, std::int64_t) {
            return phi.eval(x, t);
          }));
  }
  return worst;
}

double a_p_phi_alpha_constant(const GrowthFunction& phi, const Grid& grid,
                              std::span<const double> t_samples, double p,
                              double alpha, const CubeLattice& lattice) {
  if (p < 1.0) throw std::domain_error("a_p_phi_alpha_constant needs p >= 1");
  if (!(alpha >= 0.0)) throw std::domain_error("alpha must be >= 0");
  if (t_samples.empty()) throw std::domain_error("need at least one t-sample");
  if (lattice.cubes.empty()) throw std::domain_error("cube lattice is empty");
  double worst = 0.0;
  for (double t : t_samples) {
    if (!(t > 0.0)) continue;
    for (const Cube& q : lattice.cubes) {
      const CubeScan s = scan_cube(grid, q, p, [&](const Vec& x, std::int64_t) {
        return phi.eval(x, t);
      });
      if (s.vol == 0.0) continue;
      // |Q| replaced by N = phi_alpha(|Q|)|Q| in the Hoelder product.
      const double N = std::pow(1.0 + s.vol, alpha) * s.vol;
      double r;
      if (p == 1.0) {
        r = s.mean_w * s.vol / (N * s.min_w);
      } else {
        const double int_w = s.mean_w * s.vol;
        const double int_dual = s.mean_dual * s.vol;
        r = std::pow(N, -p) * int_w * std::pow(int_dual, p - 1.0);
      }
      worst = std::max(worst, r);
    }
  }
  return worst;
}

DoublingReport check_doubling(const GrowthFunction& phi, const Grid& grid,
                              std::span<const double> t_samples,
                              const CubeLattice& lattice) {
  if (t_samples.empty()) throw std::domain_error("need at least one t-sample");
  auto inside = [&](const Cube& q) {
    for (int d = 0; d < grid.dim; ++d) {
      if (q.center[d] - q.side / 2 < grid.origin[d] - 1e-12) return false;
      if (q.center[d] + q.side / 2 > grid.origin[d] + grid.extent + 1e-12)
        return false;
    }
    return true;
  };
  DoublingReport rep;
  for (const Cube& q : lattice.cubes) {
    const Cube grown =
        q.side < 1.0 ? dilate(q, 2.0) : Cube{q.center, q.side + 1.0};
    if (!inside(grown)) continue;
    for (double t : t_samples) {
      if (!(t > 0.0)) continue;
      const double small = phi_measure(phi, grid, q, t);
      if (!(small > 0.0)) throw std::domain_error("phi(Q,t) vanished on a lattice cube");
      const double big = phi_measure(phi, grid, grown, t);
      double& slot = q.side < 1.0 ? rep.worst_ratio_small : rep.worst_ratio_large;
      slot = std::max(slot, big / small);
    }
  }
  return rep;
}

double check_measure_ratio(const GrowthFunction& phi, const Grid& grid,
                           double p, double alpha,
                           std::span<const std::pair<Cube, Cube>> pairs,
                           std::span<const double> t_samples) {
  if (!(p > 0.0)) throw std::domain_error("p must be positive");
  double worst = 0.0;
  for (const auto& [E, Q] : pairs) {
    for (int d = 0; d < grid.dim; ++d)
      if (std::abs(E.center[d] - Q.center[d]) >
          (Q.side - E.side) / 2 + 1e-12 * Q.side)
        throw std::domain_error("measure-ratio pair is not nested");
    const double volQ = Q.volume(grid.dim);
    const double lhs = E.volume(grid.dim) / (std::pow(1.0 + volQ, alpha) * volQ);
    for (double t : t_samples) {
      if (!(t > 0.0)) continue;
      const double num = phi_measure(phi, grid, E, t);
      const double den = phi_measure(phi, grid, Q, t);
      if (!(num > 0.0)) throw std::domain_error("phi(E,t) vanished");
      worst = std::max(worst, lhs / std::pow(num / den, 1.0 / p));
    }
  }
  return worst;
}

}  // namespace mol
