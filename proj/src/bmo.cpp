#include "mol/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "mol/norms.hpp"

namespace mol {

namespace {

GridFunction cube_indicator(const Grid& g, const Cube& q) {
  return GridFunction::sample(
      g, [&](const Vec& x) { return q.contains(x, g.dim) ? 1.0 : 0.0; });
}

// int_Q |f - P_Q^s f| by midpoint sum; P is the unweighted projection.
double oscillation_integral(const GridFunction& f, const Cube& q, int s) {
  const Grid& g = f.grid();
  const GridFunction chi = cube_indicator(g, q);
  if (chi.max_abs() == 0.0) return 0.0;
  const Polynomial p = minimizing_polynomial(f, chi, s, true);
  const double cell = std::pow(g.h(), g.dim);
  double sum = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (chi[i] != 0.0)
      sum += std::abs(f[i] - p.eval(g.cell_center(i)));
  return sum * cell;
}

double abs_integral(const GridFunction& f, const Cube& q) {
  const Grid& g = f.grid();
  const double cell = std::pow(g.h(), g.dim);
  double sum = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (q.contains(g.cell_center(i), g.dim)) sum += std::abs(f[i]);
  return sum * cell;
}

double mean_oscillation_integral(const GridFunction& f, const Cube& q,
                                 std::int64_t* cells_out = nullptr) {
  const Grid& g = f.grid();
  const double cell = std::pow(g.h(), g.dim);
  double sum = 0.0;
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (q.contains(g.cell_center(i), g.dim)) {
      sum += f[i];
      ++count;
    }
  if (cells_out) *cells_out = count;
  if (count == 0) return 0.0;
  const double mean = sum / count;
  double osc = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (q.contains(g.cell_center(i), g.dim)) osc += std::abs(f[i] - mean);
  return osc * cell;
}

}  // namespace

double bmo_phi_norm(const GridFunction& f, const GrowthFunction& phi, int s,
                    const CubeLattice& lattice) {
  const Grid& g = f.grid();
  ChiNormCache cache;
  double small_term = 0.0, large_term = 0.0;
  for (const Cube& q : lattice.cubes) {
    const double inv_chi = 1.0 / cache.get(q, phi, g);
    if (q.volume(g.dim) < 1.0)
      small_term = std::max(small_term, inv_chi * oscillation_integral(f, q, s));
    else
      large_term = std::max(large_term, inv_chi * abs_integral(f, q));
  }
  double global_term = 0.0;
  if (phi.finite_on_rn) {
    const GridFunction ones =
        GridFunction::sample(g, [](const Vec&) { return 1.0; });
    double s_abs = 0.0;
    for (double v : f.values()) s_abs += std::abs(v);
    global_term = s_abs * std::pow(g.h(), g.dim) / luxembourg_norm(phi, ones).norm;
  }
  return small_term + large_term + global_term;
}

double global_bmo_phi_norm(const GridFunction& f, const GrowthFunction& phi,
                           int s, const CubeLattice& lattice) {
  const Grid& g = f.grid();
  ChiNormCache cache;
  double worst = 0.0;
  for (const Cube& q : lattice.cubes)
    worst = std::max(worst,
                     oscillation_integral(f, q, s) / cache.get(q, phi, g));
  return worst;
}

NakaiYabutaNorms nakai_yabuta_norms(const GridFunction& f,
                                    const PhiIncreasing& phi,
                                    const CubeLattice& lattice) {
  const Grid& g = f.grid();
  NakaiYabutaNorms out;
  double small_osc = 0.0, large_avg = 0.0;
  for (const Cube& q : lattice.cubes) {
    const double norm = phi.eval(q.side) * q.volume(g.dim);
    const double osc = mean_oscillation_integral(f, q);
    out.bmo_global = std::max(out.bmo_global, osc / norm);
    if (q.side < 1.0)
      small_osc = std::max(small_osc, osc / norm);
    else
      large_avg = std::max(large_avg, abs_integral(f, q) / norm);
  }
  out.bmo_small = std::max(small_osc, large_avg);
  return out;
}

PhiIncreasing psi_from_phi(const PhiIncreasing& phi) {
  auto log_integral = [phi](double r) {
    // int_{min(1,r)}^2 phi(t) dt/t in log coordinates.
    const double lo = std::log(std::min(1.0, r)), hi = std::log(2.0);
    const int M = 512;
    const double du = (hi - lo) / M;
    double s = 0.0;
    for (int i = 0; i < M; ++i) s += phi.eval(std::exp(lo + (i + 0.5) * du));
    return s * du;
  };
  PhiIncreasing psi;
  psi.name = "psi[" + phi.name + "]";
  psi.eval = [phi, log_integral](double r) {
    if (!(r > 0.0)) throw std::domain_error("psi needs r > 0");
    return phi.eval(r) / log_integral(r);
  };
  psi.lower_type = phi.lower_type;
  psi.almost_decreasing_ratio = true;  // the log-average makes psi(r)/r almost decreasing
  return psi;
}

GrowthFunction growth_from_orlicz(const OrliczFunction& Phi, int dim) {
  GrowthFunction g;
  g.eval = [f = Phi.eval](const Vec&, double t) { return t == 0.0 ? 0.0 : f(t); };
  g.dim = dim;
  g.lower_type = Phi.lower_type;
  g.lower_const = 4.0;
  g.upper_const = 4.0;
  g.declared_q = 1.0;
  g.x_independent = true;
  g.name = Phi.name;
  return g;
}

OrliczFunction phi0_from_psi(const PhiIncreasing& psi, int n) {
  if (n != 1 && n != 2) throw std::domain_error("phi0_from_psi: n must be 1 or 2");
  auto eta = [psi, n](double s) {
    return psi.eval(std::pow(s, -1.0 / n)) / s;
  };
  // Cache eta on a log grid in s; invert by monotone log-log interpolation.
  const int M = 4096;
  const double ls_lo = std::log(std::ldexp(1.0, -40));
  const double ls_hi = std::log(std::ldexp(1.0, 40));
  auto cache = std::make_shared<std::vector<std::pair<double, double>>>();
  cache->reserve(M + 1);
  for (int i = 0; i <= M; ++i) {
    const double ls = ls_lo + i * (ls_hi - ls_lo) / M;
    const double e = eta(std::exp(ls));
    if (!(e > 0.0) || !std::isfinite(e))
      throw std::domain_error("phi0_from_psi: eta not positive finite on samples");
    cache->emplace_back(ls, std::log(e));
  }
  for (int i = 1; i <= M; ++i)
    if (!((*cache)[i].second < (*cache)[i - 1].second))
      throw std::domain_error("phi0_from_psi: eta is not strictly decreasing");

  OrliczFunction phi0;
  phi0.name = "Phi0[" + psi.name + "]";
  phi0.lower_type = double(n) / (n + 1);
  phi0.upper_type = 1.0;
  phi0.eval = [cache](double t) {
    if (t == 0.0) return 0.0;
    if (!(t > 0.0)) throw std::domain_error("Phi0 needs t >= 0");
    const double target = std::log(1.0 / t);  // solve log eta(s) = log(1/t)
    const auto& c = *cache;
    if (target >= c.front().second) return std::exp(c.front().first);
    if (target <= c.back().second) return std::exp(c.back().first);
    // log eta is decreasing in log s; binary search the bracketing segment.
    size_t lo = 0, hi = c.size() - 1;
    while (hi - lo > 1) {
      const size_t mid = (lo + hi) / 2;
      (c[mid].second >= target ? lo : hi) = mid;
    }
    const double w = (c[lo].second - target) / (c[lo].second - c[hi].second);
    return std::exp(c[lo].first + w * (c[hi].first - c[lo].first));
  };
  return phi0;
}

double duality_pairing_bound(const GridFunction& g, std::span<const Atom> atoms,
                             const GrowthFunction& phi, int s,
                             const CubeLattice& lattice) {
  const double gnorm = bmo_phi_norm(g, phi, s, lattice);
  const double cell = std::pow(g.grid().h(), g.grid().dim);
  double worst = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.scale > 0.0)) continue;
    double pairing = 0.0;
    for (std::int64_t i = 0; i < g.grid().size(); ++i)
      pairing += g[i] * a.values[i];
    pairing = std::abs(pairing) * cell / a.scale;
    if (gnorm == 0.0) {
      if (pairing > 1e-10)
        throw std::domain_error("nonzero pairing against zero-norm function");
      continue;
    }
    worst = std::max(worst, pairing / gnorm);
  }
  return worst;
}

MultiplierReport multiplier_check(const GridFunction& g,
                                  const PhiIncreasing& phi,
                                  std::span<const GridFunction> test_fs,
                                  const CubeLattice& lattice) {
  if (!phi.almost_decreasing_ratio)
    throw std::domain_error("multiplier check needs the almost-decreasing flag");
  MultiplierReport rep;
  const PhiIncreasing psi = psi_from_phi(phi);
  rep.bmo_psi_norm = nakai_yabuta_norms(g, psi, lattice).bmo_global;
  rep.sup_norm = g.max_abs();
  for (const GridFunction& f : test_fs) {
    const double fn = nakai_yabuta_norms(f, phi, lattice).bmo_small;
    if (fn == 0.0) {
      rep.ratios.push_back(0.0);
      continue;
    }
    GridFunction fg = f;
    for (std::int64_t i = 0; i < f.grid().size(); ++i) fg[i] *= g[i];
    const double pn = nakai_yabuta_norms(fg, phi, lattice).bmo_small;
    rep.ratios.push_back(pn / fn);
  }
  const double budget = rep.bmo_psi_norm + rep.sup_norm;
  for (double r : rep.ratios)
    if (budget > 0.0) rep.worst_constant = std::max(rep.worst_constant, r / budget);
  return rep;
}

}  // namespace mol
