#include "mol/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mol {

namespace {

// C-infinity bump profile on (-1,1).
double bump(double u) {
  const double d = 1.0 - u * u;
  return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
}

struct Profile {
  std::function<double(double)> eval;
  std::string name;
};

std::vector<Profile> profiles_1d() {
  return {
      {[](double u) { return bump(u); }, "bump"},
      {[](double u) { return std::cos(3.0 * u) * bump(u); }, "cosmod"},
      {[](double u) { return bump(2.0 * u + 0.5); }, "shifted"},
      {[](double u) { return u * bump(u); }, "odd"},
      {[](double u) {
         const double d = 1.0 - u * u;
         return d > 0.0 ? d * d * d * d * d : 0.0;
       },
       "poly"},
      {[](double u) { return (1.0 - 4.0 * u * u) * bump(u); }, "wave"},
  };
}

// Sampled sups of |d^k p| for k = 0..order, by iterated difference
// quotients on a fine lattice.
std::vector<double> derivative_sups(const Profile& p, int order) {
  const int M = 4000;
  const double lo = -1.05, hi = 1.05;
  const double step = (hi - lo) / M;
  std::vector<double> v(M + 1);
  for (int i = 0; i <= M; ++i) v[i] = p.eval(lo + i * step);
  std::vector<double> sups(order + 1);
  for (int k = 0; k <= order; ++k) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    sups[k] = m;
    if (k == order) break;
    for (size_t i = 0; i + 1 < v.size(); ++i) v[i] = (v[i + 1] - v[i]) / step;
    v.pop_back();
  }
  return sups;
}

}  // namespace

TestFunctionDictionary default_dictionary(int dim, int order, double R) {
  if (order < 2) throw std::domain_error("dictionary order must be >= 2");
  if (!(R >= 1.0)) throw std::domain_error("dictionary radius must be >= 1");
  TestFunctionDictionary dict;
  dict.order = order;
  dict.radius = R;
  dict.version = "bump-set-1";
  std::vector<double> radii{1.0};
  for (double r = 2.0; r <= R; r *= 2.0) radii.push_back(r);
  // 2D members are products scaled into the l2 ball.
  const double squeeze = dim == 1 ? 1.0 : std::sqrt(2.0);
  for (const Profile& p : profiles_1d()) {
    const auto sups = derivative_sups(p, order);
    for (double r : radii) {
      double worst = 0.0;
      if (dim == 1) {
        for (int k = 0; k <= order; ++k)
          worst = std::max(worst, sups[k] / std::pow(r, k));
      } else {
        for (int a = 0; a <= order; ++a)
          for (int b = 0; a + b <= order; ++b)
            worst = std::max(worst, sups[a] * sups[b] *
                                        std::pow(squeeze / r, a + b));
      }
      if (!(worst > 0.0)) continue;
      TestFunction tf;
      tf.support_radius = r;
      tf.name = p.name + "@" + std::to_string(r);
      if (dim == 1) {
        tf.eval = [f = p.eval, r, c = 1.0 / worst](const Vec& x) {
          return c * f(x[0] / r);
        };
      } else {
        tf.eval = [f = p.eval, r, squeeze, c = 1.0 / worst](const Vec& x) {
          return c * f(squeeze * x[0] / r) * f(squeeze * x[1] / r);
        };
      }
      dict.members.push_back(std::move(tf));
    }
  }
  return dict;
}

TestFunction default_psi0(int dim) {
  Profile p{[](double u) { return bump(u); }, "bump"};
  // Mean one, so smooth functions reproduce themselves in the j -> inf limit.
  double mass;
  {
    const int M = 20000;
    double s = 0.0;
    for (int i = 0; i < M; ++i) s += bump(-1.0 + (i + 0.5) * 2.0 / M);
    mass = s * 2.0 / M;
  }
  TestFunction tf;
  tf.support_radius = 1.0;
  tf.name = "psi0";
  if (dim == 1) {
    tf.eval = [c = 1.0 / mass](const Vec& x) { return c * bump(x[0]); };
  } else {
    const double sq = std::sqrt(2.0);
    tf.eval = [c = 2.0 / (mass * mass), sq](const Vec& x) {
      return c * bump(sq * x[0]) * bump(sq * x[1]);
    };
  }
  return tf;
}

void MaximalParams::validate() const {
  if (N < 2) throw std::domain_error("maximal params: N >= 2");
  if (A < 0.0 || B < 0.0) throw std::domain_error("maximal params: A,B >= 0");
  if (j_max < 0) throw std::domain_error("maximal params: j_max >= 0");
  for (double t : t_grid)
    if (!(t > 0.0 && t < 1.0))
      throw std::domain_error("maximal params: t-grid must lie in (0,1)");
}

MaximalParams default_params(const Grid& grid, int N, double R) {
  MaximalParams p;
  p.N = N;
  p.R = R;
  const double h = grid.h();
  p.j_max = std::max(0, int(std::floor(std::log2(1.0 / h))) - 2);
  const int nt = 32;
  const double la = std::log(h), lb = std::log(1.0);
  for (int i = 0; i < nt; ++i)
    p.t_grid.push_back(std::exp(la + (i + 0.5) * (lb - la) / nt));
  p.validate();
  return p;
}

GridFunction convolve_scaled(const GridFunction& f, const TestFunction& psi,
                             double t) {
  if (!(t > 0.0)) throw std::domain_error("convolution scale must be positive");
  const Grid& g = f.grid();
  const double h = g.h();
  const int W = int(std::ceil(t * psi.support_radius / h)) + 1;
  const double scale = std::pow(t, -g.dim) * std::pow(h, g.dim);
  GridFunction out = GridFunction::zeros(g);
  if (g.dim == 1) {
    std::vector<double> ker(2 * W + 1);
    for (int m = -W; m <= W; ++m)
      ker[m + W] = scale * psi.eval(vec1(m * h / t));
    for (int i = 0; i < g.npts; ++i) {
      double s = 0.0;
      const int klo = std::max(-W, i - g.npts + 1), khi = std::min(W, i);
      for (int m = klo; m <= khi; ++m) s += ker[m + W] * f[i - m];
      out[i] = s;
    }
  } else {
    std::vector<double> ker((2 * W + 1) * (2 * W + 1));
    for (int my = -W; my <= W; ++my)
      for (int mx = -W; mx <= W; ++mx)
        ker[(my + W) * (2 * W + 1) + (mx + W)] =
            scale * psi.eval(vec2(mx * h / t, my * h / t));
    for (int iy = 0; iy < g.npts; ++iy)
      for (int ix = 0; ix < g.npts; ++ix) {
        double s = 0.0;
        for (int my = std::max(-W, iy - g.npts + 1); my <= std::min(W, iy); ++my)
          for (int mx = std::max(-W, ix - g.npts + 1); mx <= std::min(W, ix); ++mx)
            s += ker[(my + W) * (2 * W + 1) + (mx + W)] *
                 f[g.index(ix - mx, iy - my)];
        out[g.index(ix, iy)] = s;
      }
  }
  return out;
}

namespace {

// Max over windows of `width` cells containing each position (1D pass).
void sliding_containing_max(const std::vector<double>& win_sums, int width,
                            int npts, std::vector<double>& best) {
  // win_sums[s] is the sum over cells [s, s+width); position i is covered
  // by starts in [i-width+1, i].
  const int nwin = npts - width + 1;
  for (int i = 0; i < npts; ++i) {
    const int lo = std::max(0, i - width + 1), hi = std::min(nwin - 1, i);
    double m = best[i];
    for (int s = lo; s <= hi; ++s) m = std::max(m, win_sums[s]);
    best[i] = m;
  }
}

}  // namespace

GridFunction m_loc(const GridFunction& f, double size_cap) {
  if (!(size_cap > 0.0)) throw std::domain_error("m_loc: size cap must be positive");
  const Grid& g = f.grid();
  const double h = g.h();
  const int smax = std::min(
      g.npts, std::max(1, int(std::floor(std::pow(size_cap, 1.0 / g.dim) / h))));
  GridFunction out = GridFunction::zeros(g);
  if (g.dim == 1) {
    std::vector<double> prefix(g.npts + 1, 0.0);
    for (int i = 0; i < g.npts; ++i) prefix[i + 1] = prefix[i] + std::abs(f[i]);
    std::vector<double> sums;
    for (int s = 1; s <= smax; ++s) {
      sums.assign(g.npts - s + 1, 0.0);
      for (int a = 0; a + s <= g.npts; ++a)
        sums[a] = (prefix[a + s] - prefix[a]) / s;
      sliding_containing_max(sums, s, g.npts, out.values());
    }
  } else {
    const int n = g.npts;
    std::vector<double> prefix((n + 1) * (n + 1), 0.0);
    auto P = [&](int i, int j) -> double& { return prefix[i * (n + 1) + j]; };
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        P(iy + 1, ix + 1) = std::abs(f[g.index(ix, iy)]) + P(iy, ix + 1) +
                            P(iy + 1, ix) - P(iy, ix);
    for (int s = 1; s <= smax; ++s) {
      const int nwin = n - s + 1;
      // Row-wise max over x-starts, then column pass over y-starts.
      std::vector<double> avg(nwin * nwin);
      for (int ay = 0; ay < nwin; ++ay)
        for (int ax = 0; ax < nwin; ++ax)
          avg[ay * nwin + ax] = (P(ay + s, ax + s) - P(ay, ax + s) -
                                 P(ay + s, ax) + P(ay, ax)) /
                                double(s) * (1.0 / s);
      for (int iy = 0; iy < n; ++iy) {
        const int ylo = std::max(0, iy - s + 1), yhi = std::min(nwin - 1, iy);
        for (int ix = 0; ix < n; ++ix) {
          const int xlo = std::max(0, ix - s + 1), xhi = std::min(nwin - 1, ix);
          double m = out[g.index(ix, iy)];
          for (int ay = ylo; ay <= yhi; ++ay)
            for (int ax = xlo; ax <= xhi; ++ax)
              m = std::max(m, avg[ay * nwin + ax]);
          out[g.index(ix, iy)] = m;
        }
      }
    }
  }
  return out;
}

namespace {

// Pointwise max into `acc` of |src| dilated by an l-inf window of
// half-width `w` cells.
void window_abs_max(const GridFunction& src, int w, GridFunction& acc) {
  const Grid& g = src.grid();
  if (g.dim == 1) {
    for (int i = 0; i < g.npts; ++i) {
      double m = acc[i];
      for (int z = std::max(0, i - w); z <= std::min(g.npts - 1, i + w); ++z)
        m = std::max(m, std::abs(src[z]));
      acc[i] = m;
    }
  } else {
    for (int iy = 0; iy < g.npts; ++iy)
      for (int ix = 0; ix < g.npts; ++ix) {
        double m = acc[g.index(ix, iy)];
        for (int zy = std::max(0, iy - w); zy <= std::min(g.npts - 1, iy + w); ++zy)
          for (int zx = std::max(0, ix - w); zx <= std::min(g.npts - 1, ix + w); ++zx)
            m = std::max(m, std::abs(src[g.index(zx, zy)]));
        acc[g.index(ix, iy)] = m;
      }
  }
}

}  // namespace

GridFunction grand_maximal(const GridFunction& f, const MaximalParams& params,
                           const TestFunctionDictionary& dict,
                           GrandVariant variant) {
  params.validate();
  if (dict.members.empty()) throw std::domain_error("empty test-function dictionary");
  const Grid& g = f.grid();
  GridFunction out = GridFunction::zeros(g);
  for (const TestFunction& psi : dict.members) {
    for (double t : params.t_grid) {
      GridFunction conv = convolve_scaled(f, psi, t);
      if (variant == GrandVariant::Vertical) {
        for (std::int64_t i = 0; i < g.size(); ++i)
          out[i] = std::max(out[i], std::abs(conv[i]));
      } else {
        // |x - z|_inf < t covers the Euclidean cone in 1D and contains it
        // in 2D, so the nontangential sup dominates the vertical one.
        const int w = std::max(0, int(std::ceil(t / g.h())) - 1);
        window_abs_max(conv, w, out);
      }
    }
  }
  return out;
}

GridFunction vertical_maximal(const GridFunction& f, const TestFunction& psi0,
                              int j_max) {
  if (j_max < 0) throw std::domain_error("j_max must be >= 0");
  const Grid& g = f.grid();
  // Reject mean-zero psi0; the family (psi0)_j must see averages.
  {
    const int M = 4000;
    double s = 0.0;
    if (g.dim == 1) {
      for (int i = 0; i < M; ++i)
        s += psi0.eval(vec1(-psi0.support_radius +
                            (i + 0.5) * 2.0 * psi0.support_radius / M));
    } else {
      const int K = 200;
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
          s += psi0.eval(
              vec2(-psi0.support_radius + (i + 0.5) * 2.0 * psi0.support_radius / K,
                   -psi0.support_radius + (j + 0.5) * 2.0 * psi0.support_radius / K));
    }
    if (std::abs(s) < 1e-10) throw std::invalid_argument("psi0 must have nonzero mean");
  }
  GridFunction out = GridFunction::zeros(g);
  for (int j = 0; j <= j_max; ++j) {
    GridFunction conv = convolve_scaled(f, psi0, std::ldexp(1.0, -j));
    for (std::int64_t i = 0; i < g.size(); ++i)
      out[i] = std::max(out[i], std::abs(conv[i]));
  }
  return out;
}

GridFunction nontangential_maximal(const GridFunction& f,
                                   const TestFunction& psi0, int j_max) {
  if (j_max < 0) throw std::domain_error("j_max must be >= 0");
  const Grid& g = f.grid();
  GridFunction out = GridFunction::zeros(g);
  for (int j = 0; j <= j_max; ++j) {
    const double t = std::ldexp(1.0, -j);
    GridFunction conv = convolve_scaled(f, psi0, t);
    const int w = std::max(0, int(std::ceil(t / g.h())) - 1);
    window_abs_max(conv, w, out);
  }
  return out;
}

GridFunction peetre_maximal(const GridFunction& f, const TestFunction& psi0,
                            double A, double B, int j_max) {
  if (A < 0.0 || B < 0.0) throw std::domain_error("peetre weights need A,B >= 0");
  const Grid& g = f.grid();
  GridFunction out = GridFunction::zeros(g);
  for (int j = 0; j <= j_max; ++j) {
    const double tj = std::ldexp(1.0, j);
    GridFunction conv = convolve_scaled(f, psi0, 1.0 / tj);
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const Vec x = g.cell_center(i);
      double m = out[i];
      for (std::int64_t z = 0; z < g.size(); ++z) {
        const Vec zc = g.cell_center(z);
        const Vec y{x[0] - zc[0], x[1] - zc[1]};
        const double r = l2_norm(y, g.dim);
        const double weight = std::pow(1.0 + tj * r, A) * std::exp2(B * r);
        m = std::max(m, std::abs(conv[z]) / weight);
      }
      out[i] = m;
    }
  }
  return out;
}

GridFunction k_b_operator(const GridFunction& f, double B) {
  if (B < 0.0) throw std::domain_error("K_B needs B >= 0");
  const Grid& g = f.grid();
  const double cell = std::pow(g.h(), g.dim);
  GridFunction out = GridFunction::zeros(g);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Vec x = g.cell_center(i);
    double s = 0.0;
    for (std::int64_t k = 0; k < g.size(); ++k) {
      const Vec y = g.cell_center(k);
      const Vec d{x[0] - y[0], x[1] - y[1]};
      s += std::abs(f[k]) * std::exp2(-B * l2_norm(d, g.dim));
    }
    out[i] = s * cell;
  }
  return out;
}

double h_phi_quasinorm(const GridFunction& f, const GrowthFunction& phi,
                       const MaximalParams& params, MaximalKind which) {
  const int dim = f.grid().dim;
  GridFunction mf;
  switch (which) {
    case MaximalKind::Grand: {
      const auto dict = default_dictionary(dim, params.N, params.R);
      mf = grand_maximal(f, params, dict, GrandVariant::Vertical);
      break;
    }
    case MaximalKind::Vertical:
      mf = vertical_maximal(f, default_psi0(dim), params.j_max);
      break;
    case MaximalKind::Nontangential:
      mf = nontangential_maximal(f, default_psi0(dim), params.j_max);
      break;
    case MaximalKind::Peetre:
      mf = peetre_maximal(f, default_psi0(dim), params.A, params.B, params.j_max);
      break;
  }
  return luxembourg_norm(phi, mf).norm;
}

}  // namespace mol
