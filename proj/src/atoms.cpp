#include "mol/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mol/norms.hpp"

namespace mol {

namespace {

bool cubes_intersect(const Cube& a, const Cube& b, int dim) {
  for (int d = 0; d < dim; ++d)
    if (std::abs(a.center[d] - b.center[d]) > (a.side + b.side) / 2) return false;
  return true;
}

std::vector<std::array<int, 2>> moment_exponents(int dim, int s) {
  std::vector<std::array<int, 2>> e;
  if (dim == 1) {
    for (int a = 0; a <= s; ++a) e.push_back({a, 0});
  } else {
    for (int d = 0; d <= s; ++d)
      for (int a = 0; a <= d; ++a) e.push_back({a, d - a});
  }
  return e;
}

}  // namespace

AtomValidation validate_atom(const Atom& a, const GrowthFunction& phi,
                             std::span<const double> t_samples, double tol) {
  AtomValidation v;
  auto fail = [&](const std::string& msg) {
    v.valid = false;
    v.violations.push_back(msg);
  };
  const Grid& g = a.values.grid();
  if (!(a.scale > 0.0)) {
    if (a.values.max_abs() > 0.0) fail("zero scale with nonzero values");
    return v;
  }

  if (a.kind == Atom::Kind::CubeAtom) {
    for (std::int64_t i = 0; i < g.size(); ++i)
      if (a.values[i] != 0.0 && !a.cube.contains(g.cell_center(i), g.dim)) {
        fail("support leaks outside the cube");
        break;
      }
    double nrm;
    if (std::isinf(a.q)) {
      nrm = a.values.max_abs();
    } else {
      try {
        nrm = lq_phi_norm(a.values, a.cube, a.q, phi, t_samples);
      } catch (const std::exception&) {
        nrm = a.values.max_abs();  // support already flagged above
      }
    }
    const double bound = 1.0 / chi_norm(a.cube, phi, g);
    if (nrm / a.scale > bound * (1.0 + tol))
      fail("normalized norm exceeds ||chi_Q||^{-1} by factor " +
           std::to_string(nrm / (a.scale * bound)));
    if (a.cube.side < 1.0) {
      const double cell = std::pow(g.h(), g.dim);
      const double ref = std::max(1.0, a.values.max_abs()) *
                         std::max(1.0, a.cube.volume(g.dim));
      for (const auto& e : moment_exponents(g.dim, a.s)) {
        double m = 0.0;
        for (std::int64_t i = 0; i < g.size(); ++i) {
          if (a.values[i] == 0.0) continue;
          const Vec x = g.cell_center(i);
          m += a.values[i] * std::pow(x[0], e[0]) *
               (g.dim == 2 ? std::pow(x[1], e[1]) : 1.0);
        }
        m *= cell;
        if (std::abs(m) > tol * ref)
          fail("moment (" + std::to_string(e[0]) + "," + std::to_string(e[1]) +
               ") = " + std::to_string(m));
      }
    }
  } else {
    const double nrm = std::isinf(a.q)
                           ? a.values.max_abs()
                           : lq_phi_norm(a.values, std::nullopt, a.q, phi,
                                         t_samples);
    const GridFunction ones =
        GridFunction::sample(g, [](const Vec&) { return 1.0; });
    const double bound = 1.0 / luxembourg_norm(phi, ones).norm;
    if (nrm / a.scale > bound * (1.0 + tol))
      fail("single-atom norm exceeds the whole-space bound");
  }
  return v;
}

double lambda_q(std::span<const Atom> atoms, const std::optional<Atom>& single,
                const GrowthFunction& phi, const Grid& grid, double tol) {
  double top = 0.0;
  for (const Atom& a : atoms) top = std::max(top, a.norm);
  if (single) top = std::max(top, single->norm);
  if (top == 0.0) return 0.0;
  auto total = [&](double lambda) {
    double s = 0.0;
    for (const Atom& a : atoms) {
      if (a.norm == 0.0) continue;
      s += phi_measure(phi, grid, a.cube, a.norm / lambda);
      if (s > 4.0) return s;  // early exit, sum is monotone in lambda
    }
    if (single && single->norm > 0.0)
      s += phi_measure(phi, grid, single->norm / lambda);
    return s;
  };
  double hi = top;
  int guard = 0;
  while (total(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 400) throw std::runtime_error("lambda_q: bracket search failed");
  }
  double lo = hi / 2.0;
  while (lo > 1e-300 && total(lo) <= 1.0) {
    hi = lo;
    lo /= 2.0;
  }
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) <= 1.0 ? hi : lo) = mid;
  }
  return hi;
}

AtomicDecomposition atomic_decompose(const GridFunction& f,
                                     const GrowthFunction& phi, int s,
                                     const GridFunction& maximal, int k_lo,
                                     int k_hi) {
  if (k_hi <= k_lo) throw std::domain_error("atomic_decompose: empty level range");
  const Grid& g = f.grid();
  const double mx = maximal.max_abs();
  if (mx > std::ldexp(1.0, k_hi)) {
    throw std::runtime_error(
        "incomplete decomposition: superlevel set at the top height is nonempty");
  }

  std::vector<CZDecomposition> decs;
  decs.reserve(k_hi - k_lo + 1);
  for (int k = k_lo; k <= k_hi; ++k)
    decs.push_back(cz_decompose(f, std::ldexp(1.0, k), s, maximal));

  AtomicDecomposition out;
  out.residual = GridFunction::zeros(g);
  const double a_dil = 1.0 + std::ldexp(1.0, -(11 + g.dim));
  const double gamma = 1.0 + std::ldexp(1.0, -(12 + g.dim));
  ChiNormCache chi_cache;

  GridFunction total = GridFunction::zeros(g);
  for (int k = k_lo; k < k_hi; ++k) {
    const CZDecomposition& cur = decs[k - k_lo];
    const CZDecomposition& nxt = decs[k - k_lo + 1];
    // sum of all next-level bad parts, shared across the i-loop.
    GridFunction sum_b_next = GridFunction::zeros(g);
    for (const auto& b : nxt.bad)
      for (std::int64_t c = 0; c < g.size(); ++c) sum_b_next[c] += b[c];

    for (size_t i = 0; i < cur.bad.size(); ++i) {
      GridFunction h = cur.bad[i];
      for (std::int64_t c = 0; c < g.size(); ++c)
        h[c] -= sum_b_next[c] * cur.zeta[i][c];
      const Cube qi_star = dilate(cur.cover.cubes[i].cube, a_dil);
      for (size_t j = 0; j < nxt.bad.size(); ++j) {
        if (!nxt.small[j]) continue;
        const Cube qj_star = dilate(nxt.cover.cubes[j].cube, a_dil);
        if (!cubes_intersect(qi_star, qj_star, g.dim)) continue;
        // data = (f - P_j^{k+1}) zeta_i^k, projected onto P_s with weight
        // zeta_j^{k+1}.
        GridFunction data = GridFunction::zeros(g);
        for (std::int64_t c = 0; c < g.size(); ++c)
          if (cur.zeta[i][c] != 0.0)
            data[c] = (f[c] - nxt.polys[j].eval(g.cell_center(c))) *
                      cur.zeta[i][c];
        const Polynomial pij = minimizing_polynomial(data, nxt.zeta[j], s, true);
        for (std::int64_t c = 0; c < g.size(); ++c)
          if (nxt.zeta[j][c] != 0.0)
            h[c] += pij.eval(g.cell_center(c)) * nxt.zeta[j][c];
      }
      const double nrm = h.max_abs();
      if (nrm == 0.0) continue;

      const double l = cur.cover.cubes[i].cube.side;
      Cube qtilde;
      if (l >= 2.0 / (gamma - 1.0))
        qtilde = Cube{cur.cover.cubes[i].cube.center, a_dil * (l + 2.0)};
      else
        qtilde = dilate(qi_star, std::ldexp(1.0, 6) * g.dim);

      Atom atom;
      atom.kind = Atom::Kind::CubeAtom;
      atom.cube = qtilde;
      atom.values = h;
      atom.s = s;
      atom.norm = nrm;
      atom.scale = nrm * chi_cache.get(qtilde, phi, g);
      out.c10 = std::max(out.c10, nrm / std::ldexp(1.0, k));
      out.levels.push_back(k);
      for (std::int64_t c = 0; c < g.size(); ++c) total[c] += h[c];
      out.atoms.push_back(std::move(atom));
    }
  }

  // Bottom good part as the single atom.
  const GridFunction& g0 = decs.front().good;
  if (g0.max_abs() > 0.0) {
    Atom single;
    single.kind = Atom::Kind::SingleAtom;
    single.values = g0;
    single.s = s;
    single.norm = g0.max_abs();
    const GridFunction ones =
        GridFunction::sample(g, [](const Vec&) { return 1.0; });
    single.scale = single.norm * luxembourg_norm(phi, ones).norm;
    for (std::int64_t c = 0; c < g.size(); ++c) total[c] += g0[c];
    out.single_atom = std::move(single);
  }

  for (std::int64_t c = 0; c < g.size(); ++c) out.residual[c] = f[c] - total[c];
  out.lambda = lambda_q(out.atoms, out.single_atom, phi, g);
  return out;
}

GridFunction reconstruct(const AtomicDecomposition& d, const Grid& grid) {
  GridFunction out = GridFunction::zeros(grid);
  for (const Atom& a : d.atoms)
    for (std::int64_t c = 0; c < grid.size(); ++c) out[c] += a.values[c];
  if (d.single_atom)
    for (std::int64_t c = 0; c < grid.size(); ++c)
      out[c] += d.single_atom->values[c];
  return out;
}

double finite_atomic_norm(const GridFunction& f,
                          std::span<const AtomicDecomposition> candidates,
                          double tol) {
  double best = std::numeric_limits<double>::infinity();
  const double ref = f.max_abs();
  for (const auto& d : candidates) {
    GridFunction rec = reconstruct(d, f.grid());
    double err = 0.0;
    for (std::int64_t c = 0; c < f.grid().size(); ++c)
      err = std::max(err, std::abs(rec[c] - f[c]));
    if (err <= tol * std::max(ref, 1e-300)) best = std::min(best, d.lambda);
  }
  if (!std::isfinite(best))
    throw std::invalid_argument("no candidate reconstructs the target");
  return best;
}

}  // namespace mol
