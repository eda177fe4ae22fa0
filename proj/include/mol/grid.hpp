#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace mol {

// Point in R^n with n <= 2; unused coordinates stay zero.
using Vec = std::array<double, 2>;

inline Vec vec1(double x) { return Vec{x, 0.0}; }
inline Vec vec2(double x, double y) { return Vec{x, y}; }

double linf_norm(const Vec& v, int dim);
double l2_norm(const Vec& v, int dim);

// Uniform axis-parallel grid over the cubic box
// [origin, origin + extent]^dim, sampled at cell centers.
struct Grid {
  int dim = 1;           // 1 or 2
  Vec origin{0.0, 0.0};  // lower corner of the box
  double extent = 1.0;   // box side length (all axes equal)
  int npts = 2;          // points per axis

  double h() const { return extent / npts; }
  std::int64_t size() const {
    return dim == 1 ? npts : std::int64_t(npts) * npts;
  }
  std::int64_t index(int ix, int iy = 0) const {
    return dim == 1 ? ix : std::int64_t(iy) * npts + ix;
  }
  Vec cell_center(std::int64_t idx) const;
  void validate() const;

  bool operator==(const Grid& o) const {
    return dim == o.dim && origin == o.origin && extent == o.extent &&
           npts == o.npts;
  }
};

// Closed axis-parallel cube, identified by center and sidelength.
struct Cube {
  Vec center{0.0, 0.0};
  double side = 1.0;

  double volume(int dim) const { return dim == 1 ? side : side * side; }
  bool contains(const Vec& x, int dim) const;
};

// Dilated cube lambda*Q: same center, sidelength scaled.
Cube dilate(const Cube& q, double factor);

// Sampled real function on a uniform grid, zero-extended outside the box.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction zeros(const Grid& grid);
  static GridFunction sample(const Grid& grid,
                             const std::function<double(const Vec&)>& fn);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double operator[](std::int64_t idx) const { return values_[idx]; }
  double& operator[](std::int64_t idx) { return values_[idx]; }

  double max_abs() const;
  // Multilinear interpolation; zero outside the box.
  double interp(const Vec& x) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Midpoint-rule integral over the whole box.
double integrate(const GridFunction& f);
// Midpoint-rule integral over cells whose centers lie in the closed cube.
double integrate(const GridFunction& f, const Cube& region);

// x -> t^{-n} psi((x - shift)/t), resampled on psi's grid.
GridFunction dilate_translate(const GridFunction& psi, double t,
                              const Vec& shift);

// One row per grid point: coordinates, value.
void write_csv(const GridFunction& f, std::ostream& out);
void write_csv(const GridFunction& f, const std::string& path);

// Compact little-endian dump: dim, npts (int64), origin[2], extent
// (float64), then values.
void write_binary(const GridFunction& f, const std::string& path);
GridFunction read_binary(const std::string& path);

}  // namespace mol
