#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mol/grid.hpp"
#include "mol/growth.hpp"
#include "mol/maximal.hpp"

namespace mol {

// Truncated Riesz kernel k_j(x) = x_j / |x|^{n+1} * cutoff(x), sampled on
// the convolution offset lattice. cutoff is 1 on Q(0,1) and vanishes off
// Q(0,2). The center cell is zeroed (principal value) and negative offsets
// mirror positive ones with flipped sign, so the cell sum is exactly 0.
struct LocalRieszKernel {
  int direction = 1;  // 1..dim
  int half_width = 0;  // offsets in [-W, W] cells per axis
  std::vector<double> samples;  // row-major over offsets, premultiplied by h^dim
};

LocalRieszKernel make_riesz_kernel(const Grid& grid, int direction);

// k_j * f; needs at least 16 cells across Q(0,2).
GridFunction riesz_local(const GridFunction& f, int direction);

// 1D symbol sigma(x, xi) with declared S^0_{1,0} bounds.
struct Symbol {
  std::function<double(double, double)> eval;
  double declared_bound = 1.0;  // C with |d_x^a d_xi^b sigma| <= C (1+|xi|)^{-b}
  int order_cap = 3;
  std::string name;
};

struct SymbolCheck {
  bool ok = true;
  double worst_constant = 0.0;
  int worst_a = 0, worst_b = 0;
  double worst_x = 0.0, worst_xi = 0.0;
};

// Finite-difference estimate of the symbol-class bounds on a sample
// lattice of positions and frequencies.
SymbolCheck check_symbol(const Symbol& sigma, std::span<const double> xs,
                         std::span<const double> xis);

// Tf(x) = int sigma(x,xi) e^{2 pi i x xi} f^(xi) dxi via the exact direct
// DFT on the grid's frequency lattice; sigma == 1 reproduces f exactly.
// 1D only.
GridFunction psdo_apply(const Symbol& sigma, const GridFunction& f);

enum class OperatorNorm { HPhi, BmoPhi, WeightedL2 };

struct BoundednessReport {
  std::vector<double> ratios;
  double worst = 0.0;
  int skipped = 0;
};

// Per-element ratio ||op f|| / ||f|| in the chosen norm over the corpus;
// zero-norm inputs are skipped and counted.
BoundednessReport boundedness_experiment(
    const std::function<GridFunction(const GridFunction&)>& op,
    const GrowthFunction& phi, std::span<const GridFunction> corpus,
    OperatorNorm which, const MaximalParams& params);

}  // namespace mol
