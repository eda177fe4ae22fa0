#include "mol/czd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mol {

namespace {

int cell_count(const Grid& g) { return int(g.size()); }

// Chessboard distance (in cells) from each set cell to the nearest
// complement cell; cells outside the box count as complement. Exact for
// the l-inf metric via the two-pass 8-neighbour chamfer.
std::vector<int> distance_transform(const Grid& g,
                                    const std::vector<char>& in_set) {
  const int n = g.npts;
  const int INF = 1 << 28;
  std::vector<int> dt(cell_count(g));
  auto border = [&](int ix, int iy) {
    int d = std::min(ix, n - 1 - ix) + 1;
    if (g.dim == 2) d = std::min(d, std::min(iy, n - 1 - iy) + 1);
    return d;
  };
  for (int iy = 0; iy < (g.dim == 2 ? n : 1); ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const std::int64_t c = g.index(ix, iy);
      dt[c] = in_set[c] ? std::min(INF, border(ix, iy)) : 0;
    }
  auto relax = [&](int ix, int iy, int jx, int jy) {
    if (jx < 0 || jx >= n || jy < 0 || (g.dim == 2 && jy >= n)) return;
    const std::int64_t c = g.index(ix, iy), b = g.index(jx, jy);
    dt[c] = std::min(dt[c], dt[b] + 1);
  };
  const int ny = g.dim == 2 ? n : 1;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      relax(ix, iy, ix - 1, iy);
      if (g.dim == 2) {
        relax(ix, iy, ix - 1, iy - 1);
        relax(ix, iy, ix, iy - 1);
        relax(ix, iy, ix + 1, iy - 1);
      }
    }
  for (int iy = ny - 1; iy >= 0; --iy)
    for (int ix = n - 1; ix >= 0; --ix) {
      relax(ix, iy, ix + 1, iy);
      if (g.dim == 2) {
        relax(ix, iy, ix + 1, iy + 1);
        relax(ix, iy, ix, iy + 1);
        relax(ix, iy, ix - 1, iy + 1);
      }
    }
  return dt;
}

struct Builder {
  const Grid* g;
  const std::vector<char>* in_set;
  const std::vector<int>* dt;
  double accept_factor;
  double upper_factor;  // 2 * accept_factor + 1, from maximality
  std::vector<WhitneyCube> out;

  // Node covers cells [x0,x0+m) per axis (cells beyond npts are complement).
  void visit(int x0, int y0, int m) {
    const int n = g->npts;
    bool any_set = false, any_comp = false;
    int dtmin = 1 << 28;
    const int ylo = g->dim == 2 ? y0 : 0, yhi = g->dim == 2 ? y0 + m : 1;
    for (int iy = ylo; iy < yhi; ++iy)
      for (int ix = x0; ix < x0 + m; ++ix) {
        if (ix >= n || (g->dim == 2 && iy >= n)) {
          any_comp = true;
          continue;
        }
        const std::int64_t c = g->index(ix, iy);
        if ((*in_set)[c]) {
          any_set = true;
          dtmin = std::min(dtmin, (*dt)[c]);
        } else {
          any_comp = true;
        }
      }
    if (!any_set) return;
    const double h = g->h();
    const double l = m * h;
    const double dist = (dtmin - 1) * h;
    if (!any_comp && (accept_factor * l <= dist || m == 1)) {
      WhitneyCube wc;
      Vec center = vec1(g->origin[0] + (x0 + m / 2.0) * h);
      if (g->dim == 2) center[1] = g->origin[1] + (y0 + m / 2.0) * h;
      wc.cube = Cube{center, l};
      wc.dist = dist;
      wc.sandwich_ok = accept_factor * l <= dist && dist <= upper_factor * l;
      out.push_back(wc);
      return;
    }
    const int half = m / 2;
    visit(x0, y0, half);
    visit(x0 + half, y0, half);
    if (g->dim == 2) {
      visit(x0, y0 + half, half);
      visit(x0 + half, y0 + half, half);
    }
  }
};

// C2 ramp: 1 for v <= 1/2, 0 for v >= a/2.
double collar_ramp(double v, double a) {
  if (v <= 0.5) return 1.0;
  const double hi = a / 2.0;
  if (v >= hi) return 0.0;
  const double u = (v - 0.5) / (hi - 0.5);
  return 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

double xi_bump(const Vec& u, int dim, double a) {
  double v = collar_ramp(std::abs(u[0]), a);
  if (dim == 2) v *= collar_ramp(std::abs(u[1]), a);
  return v;
}

}  // namespace

WhitneyCover whitney(const GridFunction& mask, double accept_factor) {
  if (!(accept_factor >= 1.0))
    throw std::domain_error("whitney: accept factor must be >= 1");
  const Grid& g = mask.grid();
  std::vector<char> in_set(cell_count(g));
  std::int64_t set_count = 0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    in_set[i] = mask[i] != 0.0;
    set_count += in_set[i];
  }
  WhitneyCover cover;
  cover.grid = g;
  cover.dilation = 1.0 + std::ldexp(1.0, -(11 + g.dim));
  cover.accept_factor = accept_factor;
  if (set_count == g.size())
    throw std::domain_error("whitney: set equals the whole box");
  if (set_count == 0) return cover;

  const auto dt = distance_transform(g, in_set);
  int P = 1;
  while (P < g.npts) P *= 2;
  Builder b;
  b.g = &g;
  b.in_set = &in_set;
  b.dt = &dt;
  b.accept_factor = accept_factor;
  b.upper_factor = 2.0 * accept_factor + 1.0;
  b.visit(0, 0, P);
  cover.cubes = std::move(b.out);

  std::vector<int> hits(cell_count(g), 0);
  for (const WhitneyCube& wc : cover.cubes) {
    const Cube dq = dilate(wc.cube, cover.dilation);
    for (std::int64_t i = 0; i < g.size(); ++i)
      if (dq.contains(g.cell_center(i), g.dim)) ++hits[i];
  }
  cover.overlap = *std::max_element(hits.begin(), hits.end());
  return cover;
}

std::vector<GridFunction> partition_of_unity(const WhitneyCover& cover) {
  const Grid& g = cover.grid;
  std::vector<GridFunction> xi;
  xi.reserve(cover.cubes.size());
  GridFunction total = GridFunction::zeros(g);
  for (const WhitneyCube& wc : cover.cubes) {
    GridFunction x = GridFunction::sample(g, [&](const Vec& p) {
      const Vec u{(p[0] - wc.cube.center[0]) / wc.cube.side,
                  (p[1] - wc.cube.center[1]) / wc.cube.side};
      return xi_bump(u, g.dim, cover.dilation);
    });
    for (std::int64_t i = 0; i < g.size(); ++i) total[i] += x[i];
    xi.push_back(std::move(x));
  }
  for (auto& x : xi)
    for (std::int64_t i = 0; i < g.size(); ++i) {
      if (total[i] > 0.0)
        x[i] /= total[i];
      else if (x[i] != 0.0)
        throw std::logic_error("partition of unity: uncovered set cell");
    }
  return xi;
}

int monomial_count(int dim, int degree) {
  return dim == 1 ? degree + 1 : (degree + 1) * (degree + 2) / 2;
}

namespace {

// Exponent list for the basis, total degree <= s.
std::vector<std::array<int, 2>> monomial_exponents(int dim, int s) {
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

double Polynomial::eval(const Vec& x) const {
  const auto exps = monomial_exponents(dim, degree);
  double s = 0.0;
  const double ux = (x[0] - center[0]) / scale;
  const double uy = (x[1] - center[1]) / scale;
  for (size_t k = 0; k < exps.size(); ++k)
    s += coef[k] * std::pow(ux, exps[k][0]) *
         (dim == 2 ? std::pow(uy, exps[k][1]) : 1.0);
  return s;
}

Polynomial minimizing_polynomial(const GridFunction& f,
                                 const GridFunction& weight, int s,
                                 bool allow_rank_deficient) {
  if (s < 0) throw std::domain_error("polynomial degree must be >= 0");
  const Grid& g = f.grid();
  if (!(weight.grid() == g)) throw std::invalid_argument("grid mismatch");
  Vec lo{0, 0}, hi{0, 0};
  bool seen = false;
  double wsum = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double w = weight[i];
    if (w < 0.0) throw std::domain_error("weight must be nonnegative");
    if (w == 0.0) continue;
    wsum += w;
    const Vec x = g.cell_center(i);
    if (!seen) {
      lo = hi = x;
      seen = true;
    } else {
      for (int d = 0; d < g.dim; ++d) {
        lo[d] = std::min(lo[d], x[d]);
        hi[d] = std::max(hi[d], x[d]);
      }
    }
  }
  if (!(wsum > 0.0)) throw std::domain_error("weight has zero mass");

  Polynomial p;
  p.dim = g.dim;
  p.degree = s;
  p.center = Vec{(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2};
  p.scale = std::max({(hi[0] - lo[0]) / 2, (hi[1] - lo[1]) / 2, g.h() / 2});

  const auto exps = monomial_exponents(g.dim, s);
  const int m = int(exps.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  std::vector<double> mono(m);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double w = weight[i];
    if (w == 0.0) continue;
    const Vec x = g.cell_center(i);
    const double ux = (x[0] - p.center[0]) / p.scale;
    const double uy = (x[1] - p.center[1]) / p.scale;
    for (int k = 0; k < m; ++k)
      mono[k] = std::pow(ux, exps[k][0]) *
                (g.dim == 2 ? std::pow(uy, exps[k][1]) : 1.0);
    for (int a = 0; a < m; ++a) {
      rhs[a] += w * f[i] * mono[a];
      for (int b = a; b < m; ++b) G(a, b) += w * mono[a] * mono[b];
    }
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < a; ++b) G(a, b) = G(b, a);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(m - 1);
  if (!allow_rank_deficient && (!(smin > 0.0) || smax / smin > 1e12))
    throw std::domain_error("degenerate weight: Gram system ill-conditioned");
  svd.setThreshold(1e-10);
  Eigen::VectorXd c = svd.solve(rhs);
  p.coef.assign(c.data(), c.data() + m);
  return p;
}

CZDecomposition cz_decompose(const GridFunction& f, double lambda, int s,
                             const GridFunction& maximal) {
  const Grid& g = f.grid();
  if (!(maximal.grid() == g)) throw std::invalid_argument("grid mismatch");
  double inf_max = maximal[0];
  for (double v : maximal.values()) inf_max = std::min(inf_max, v);
  GridFunction mask = GridFunction::zeros(g);
  std::int64_t n_set = 0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    mask[i] = maximal[i] > lambda ? 1.0 : 0.0;
    n_set += mask[i] != 0.0;
  }
  if (n_set == g.size())
    throw std::domain_error("cz_decompose: lambda below the maximal function everywhere");

  CZDecomposition d;
  d.lambda = lambda;
  d.degree = s;
  d.good = f;
  if (n_set == 0) {
    d.cover.grid = g;
    d.cover.dilation = 1.0 + std::ldexp(1.0, -(11 + g.dim));
    return d;
  }
  d.cover = whitney(mask);
  d.zeta = partition_of_unity(d.cover);
  const size_t nc = d.cover.cubes.size();
  d.polys.resize(nc);
  d.small.resize(nc);
  d.bad.reserve(nc);
  for (size_t i = 0; i < nc; ++i) {
    const double l = d.cover.cubes[i].cube.side;
    d.small[i] = l < 1.0;
    GridFunction b = GridFunction::zeros(g);
    if (d.small[i]) {
      d.polys[i] = minimizing_polynomial(f, d.zeta[i], s, true);
      for (std::int64_t k = 0; k < g.size(); ++k)
        if (d.zeta[i][k] != 0.0)
          b[k] = (f[k] - d.polys[i].eval(g.cell_center(k))) * d.zeta[i][k];
    } else {
      for (std::int64_t k = 0; k < g.size(); ++k) b[k] = f[k] * d.zeta[i][k];
    }
    for (std::int64_t k = 0; k < g.size(); ++k) d.good[k] -= b[k];
    d.bad.push_back(std::move(b));
  }
  return d;
}

}  // namespace mol
