#include "mol/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mol {

double linf_norm(const Vec& v, int dim) {
  double m = std::abs(v[0]);
  if (dim == 2) m = std::max(m, std::abs(v[1]));
  return m;
}

double l2_norm(const Vec& v, int dim) {
  return dim == 1 ? std::abs(v[0]) : std::hypot(v[0], v[1]);
}

Vec Grid::cell_center(std::int64_t idx) const {
  const double hh = h();
  if (dim == 1) return vec1(origin[0] + (idx + 0.5) * hh);
  const std::int64_t iy = idx / npts;
  const std::int64_t ix = idx % npts;
  return vec2(origin[0] + (ix + 0.5) * hh, origin[1] + (iy + 0.5) * hh);
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dim must be 1 or 2");
  if (npts < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw std::invalid_argument("grid extent must be positive");
  if (!std::isfinite(origin[0]) || !std::isfinite(origin[1]))
    throw std::invalid_argument("grid origin must be finite");
}

bool Cube::contains(const Vec& x, int dim) const {
  // Closed cube; tiny slack keeps cell centers on the boundary inside.
  const double r = side / 2 + side * 1e-12;
  for (int d = 0; d < dim; ++d)
    if (std::abs(x[d] - center[d]) > r) return false;
  return true;
}

Cube dilate(const Cube& q, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  return Cube{q.center, q.side * factor};
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (std::int64_t(values_.size()) != grid_.size())
    throw std::invalid_argument("value count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("grid function values must be finite");
}

GridFunction GridFunction::zeros(const Grid& grid) {
  grid.validate();
  return GridFunction(grid, std::vector<double>(grid.size(), 0.0));
}

GridFunction GridFunction::sample(const Grid& grid,
                                  const std::function<double(const Vec&)>& fn) {
  grid.validate();
  std::vector<double> v(grid.size());
  for (std::int64_t i = 0; i < grid.size(); ++i) v[i] = fn(grid.cell_center(i));
  return GridFunction(grid, std::move(v));
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::interp(const Vec& x) const {
  const double hh = grid_.h();
  // Cell-center nodes: value i lives at origin + (i+0.5)h.
  auto axis = [&](int d, int& i0, double& w) {
    const double u = (x[d] - grid_.origin[d]) / hh - 0.5;
    const double fl = std::floor(u);
    i0 = int(fl);
    w = u - fl;
  };
  auto node = [&](int ix, int iy) -> double {
    if (ix < 0 || ix >= grid_.npts) return 0.0;
    if (grid_.dim == 2 && (iy < 0 || iy >= grid_.npts)) return 0.0;
    return values_[grid_.index(ix, iy)];
  };
  int ix;
  double wx;
  axis(0, ix, wx);
  if (grid_.dim == 1)
    return (1 - wx) * node(ix, 0) + wx * node(ix + 1, 0);
  int iy;
  double wy;
  axis(1, iy, wy);
  return (1 - wx) * (1 - wy) * node(ix, iy) + wx * (1 - wy) * node(ix + 1, iy) +
         (1 - wx) * wy * node(ix, iy + 1) + wx * wy * node(ix + 1, iy + 1);
}

double integrate(const GridFunction& f) {
  const double cell = std::pow(f.grid().h(), f.grid().dim);
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * cell;
}

double integrate(const GridFunction& f, const Cube& region) {
  const Grid& g = f.grid();
  const double cell = std::pow(g.h(), g.dim);
  double s = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (region.contains(g.cell_center(i), g.dim)) s += f[i];
  return s * cell;
}

GridFunction dilate_translate(const GridFunction& psi, double t, const Vec& shift) {
  if (!(t > 0.0)) throw std::domain_error("dilate_translate requires t > 0");
  const Grid& g = psi.grid();
  const double scale = std::pow(t, -g.dim);
  std::vector<double> out(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    Vec x = g.cell_center(i);
    Vec y{(x[0] - shift[0]) / t, (x[1] - shift[1]) / t};
    out[i] = scale * psi.interp(y);
  }
  return GridFunction(g, std::move(out));
}

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void write_csv(const GridFunction& f, std::ostream& out) {
  const Grid& g = f.grid();
  if (g.dim == 1)
    out << "x,value\n";
  else
    out << "x,y,value\n";
  for (std::int64_t i = 0; i < g.size(); ++i) {
    Vec x = g.cell_center(i);
    out << fmt_double(x[0]);
    if (g.dim == 2) out << ',' << fmt_double(x[1]);
    out << ',' << fmt_double(f[i]) << '\n';
  }
}

void write_csv(const GridFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_csv(f, out);
}

namespace {
void put_i64(std::ostream& o, std::int64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (std::uint64_t(v) >> (8 * i)) & 0xff;
  o.write(reinterpret_cast<const char*>(b), 8);
}
void put_f64(std::ostream& o, double v) {
  std::uint64_t u;
  static_assert(sizeof u == sizeof v);
  std::memcpy(&u, &v, 8);
  put_i64(o, std::int64_t(u));
}
std::int64_t get_i64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return std::int64_t(v);
}
double get_f64(std::istream& in) {
  std::uint64_t u = std::uint64_t(get_i64(in));
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}
}  // namespace

void write_binary(const GridFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  const Grid& g = f.grid();
  put_i64(out, g.dim);
  put_i64(out, g.npts);
  put_f64(out, g.origin[0]);
  put_f64(out, g.origin[1]);
  put_f64(out, g.extent);
  for (double v : f.values()) put_f64(out, v);
}

GridFunction read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  Grid g;
  g.dim = int(get_i64(in));
  g.npts = int(get_i64(in));
  g.origin[0] = get_f64(in);
  g.origin[1] = get_f64(in);
  g.extent = get_f64(in);
  g.validate();
  std::vector<double> v(g.size());
  for (auto& x : v) x = get_f64(in);
  if (!in) throw std::runtime_error("truncated binary dump: " + path);
  return GridFunction(g, std::move(v));
}

}  // namespace mol
