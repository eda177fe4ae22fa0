#pragma once

#include <vector>

#include "mol/grid.hpp"

namespace mol {

struct WhitneyCube {
  Cube cube;
  double dist = 0.0;         // l-inf distance to the complement
  bool sandwich_ok = false;  // accept_factor * l <= dist <= upper bound
};

// Cover of an open cell set by dyadic cubes. Cubes tile the set exactly
// (cell-aligned), so the dilated cubes aQ have overlap 1 whenever the
// collar (a-1)l/2 stays below half a cell.
struct WhitneyCover {
  Grid grid;
  std::vector<WhitneyCube> cubes;
  double dilation = 0.0;       // a = 1 + 2^{-(11+n)}
  double accept_factor = 2.0;  // c in the accept rule c * l <= dist
  int overlap = 0;             // max count of dilated cubes over any set cell
};

// mask: nonzero cells form the open set. The set must not be the whole
// box. A cube is accepted once accept_factor * l <= dist; maximality then
// bounds dist <= (2 * accept_factor + 1) * l. Single-cell cubes that still
// miss the lower bound are emitted with sandwich_ok = false rather than
// dropped, so the cover always tiles the set.
WhitneyCover whitney(const GridFunction& mask, double accept_factor = 2.0);

// zeta_i = xi((x-x_i)/l_i) / sum_j xi((x-x_j)/l_j) on the set, 0 outside.
// xi is the fixed C2 spline bump: 1 on Q(0,1), supported in aQ(0,1).
std::vector<GridFunction> partition_of_unity(const WhitneyCover& cover);

// Polynomial in the monomial basis ((x - center)/scale)^alpha, |alpha| <=
// degree (total degree in 2D).
struct Polynomial {
  int dim = 1;
  int degree = 0;
  Vec center{0.0, 0.0};
  double scale = 1.0;
  std::vector<double> coef;

  double eval(const Vec& x) const;
};

int monomial_count(int dim, int degree);

// Weighted L2 projection of f onto polynomials of degree <= s: solves the
// Gram system with basis centered on the weight's support box. When the
// weight supports fewer independent moments than the basis (tiny cubes),
// the Gram matrix is singular but the normal equations stay consistent;
// with allow_rank_deficient the minimum-norm solution is returned and the
// orthogonality relations still hold exactly. Otherwise a condition number
// above 1e12 is an error.
Polynomial minimizing_polynomial(const GridFunction& f,
                                 const GridFunction& weight, int s,
                                 bool allow_rank_deficient = false);

struct CZDecomposition {
  double lambda = 0.0;
  int degree = 0;
  WhitneyCover cover;
  std::vector<GridFunction> zeta;
  std::vector<Polynomial> polys;   // valid only where small[i]
  std::vector<bool> small;         // l_i < 1
  std::vector<GridFunction> bad;   // b_i
  GridFunction good;               // g = f - sum b_i
};

// Decomposition at height lambda of the superlevel set {maximal > lambda}:
// b_i = (f - P_i) zeta_i on small cubes, f zeta_i on large ones.
CZDecomposition cz_decompose(const GridFunction& f, double lambda, int s,
                             const GridFunction& maximal);

}  // namespace mol
