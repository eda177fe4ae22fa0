#include "mol/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mol {

namespace {

double modular(const GrowthFunction& phi, const GridFunction& f, double lambda) {
  const Grid& g = f.grid();
  const double cell = std::pow(g.h(), g.dim);
  double s = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    s += phi.eval(g.cell_center(i), std::abs(f[i]) / lambda);
  return s * cell;
}

}  // namespace

LuxembourgResult luxembourg_norm(const GrowthFunction& phi,
                                 const GridFunction& f, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("luxembourg_norm: tol must be positive");
  const double fmax = f.max_abs();
  if (fmax == 0.0) return LuxembourgResult{0.0, 0.0, 0, 0.0, 0.0};

  const Grid& g = f.grid();
  const double vol = std::pow(g.extent, g.dim);
  double lo = 1e-300;
  double hi = fmax * std::max(1.0, vol);
  int iters = 0;
  // M is nonincreasing in lambda; grow hi until M(hi) <= 1.
  while (modular(phi, f, hi) > 1.0) {
    hi *= 2.0;
    if (++iters > 2000 || !std::isfinite(hi))
      throw std::runtime_error("luxembourg_norm: modular never finite on bracket");
  }
  lo = hi / 2.0;
  while (lo > 1e-300 && modular(phi, f, lo) <= 1.0) {
    hi = lo;
    lo /= 2.0;
    ++iters;
  }
  // Bisect to the infimum-side endpoint.
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double m = modular(phi, f, mid);
    ++iters;
    if (m <= 1.0)
      hi = mid;
    else
      lo = mid;
    if (std::abs(m - 1.0) <= tol) {
      hi = mid;
      break;
    }
  }
  LuxembourgResult r;
  r.norm = hi;
  r.modular_at_norm = modular(phi, f, hi);
  r.iterations = iters;
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  return r;
}

double luxembourg_norm_indicator(const std::function<double(double)>& Phi,
                                 double vol, double tol) {
  if (!(vol > 0.0)) throw std::domain_error("indicator norm needs positive measure");
  // Solve vol * Phi(1/lambda) = 1 for the infimum lambda.
  auto mod = [&](double lambda) { return vol * Phi(1.0 / lambda); };
  double hi = 1.0;
  while (mod(hi) > 1.0) hi *= 2.0;
  double lo = hi;
  while (mod(lo / 2.0) <= 1.0) lo /= 2.0;
  lo /= 2.0;
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (mod(mid) <= 1.0 ? hi : lo) = mid;
  }
  return hi;
}

double lq_phi_norm(const GridFunction& f, const std::optional<Cube>& Q,
                   double q, const GrowthFunction& phi,
                   std::span<const double> t_samples) {
  const Grid& g = f.grid();
  if (Q) {
    for (std::int64_t i = 0; i < g.size(); ++i)
      if (f[i] != 0.0 && !Q->contains(g.cell_center(i), g.dim))
        throw std::invalid_argument("lq_phi_norm: support leaks outside the cube");
  } else if (!phi.finite_on_rn) {
    throw std::invalid_argument(
        "lq_phi_norm: whole-space norm needs phi with finite integral");
  }
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
  }
  if (q < 1.0) throw std::domain_error("lq_phi_norm: q must be >= 1");
  const double cell = std::pow(g.h(), g.dim);
  double best = 0.0;
  for (double t : t_samples) {
    if (t <= 0.0) continue;
    double num = 0.0, den = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const Vec x = g.cell_center(i);
      if (Q && !Q->contains(x, g.dim)) continue;
      const double w = phi.eval(x, t);
      den += w;
      num += std::pow(std::abs(f[i]), q) * w;
    }
    if (den <= 0.0) continue;
    best = std::max(best, std::pow(num * cell / (den * cell), 1.0 / q));
  }
  return best;
}

double chi_norm(const Cube& Q, const GrowthFunction& phi, const Grid& grid,
                double tol) {
  if (phi.x_independent) {
    const Vec origin{0.0, 0.0};
    return luxembourg_norm_indicator(
        [&](double t) { return phi.eval(origin, t); }, Q.volume(grid.dim),
        tol);
  }
  GridFunction chi = GridFunction::sample(
      grid, [&](const Vec& x) { return Q.contains(x, grid.dim) ? 1.0 : 0.0; });
  if (chi.max_abs() == 0.0)
    throw std::invalid_argument("chi_norm: cube misses the grid");
  return luxembourg_norm(phi, chi, tol).norm;
}

double ChiNormCache::get(const Cube& Q, const GrowthFunction& phi,
                         const Grid& grid, double tol) {
  const auto key = std::make_tuple(Q.center[0], Q.center[1], Q.side);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const double v = chi_norm(Q, phi, grid, tol);
  cache_.emplace(key, v);
  return v;
}

}  // namespace mol
