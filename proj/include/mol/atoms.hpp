#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mol/czd.hpp"
#include "mol/grid.hpp"
#include "mol/growth.hpp"

namespace mol {

// Atoms are stored unnormalized (the actual summands of the
// decomposition); `scale` is the declared multiple, so values/scale is the
// normalized atom and must meet the norm bound ||a|| <= ||chi_Q||^{-1}.
struct Atom {
  enum class Kind { CubeAtom, SingleAtom };
  Kind kind = Kind::CubeAtom;
  Cube cube;  // cube-atoms only
  GridFunction values;
  double q = std::numeric_limits<double>::infinity();
  int s = 0;
  double norm = 0.0;   // measured L^q_phi norm of `values`
  double scale = 0.0;  // declared multiple
};

struct AtomValidation {
  bool valid = true;
  std::vector<std::string> violations;
};

// Checks support, the normalized norm bound, and vanishing moments up to s
// (cube-atoms with l(Q) < 1 only). Never throws.
AtomValidation validate_atom(const Atom& a, const GrowthFunction& phi,
                             std::span<const double> t_samples,
                             double tol = 1e-8);

struct AtomicDecomposition {
  std::vector<Atom> atoms;
  std::optional<Atom> single_atom;
  double lambda = 0.0;       // Lambda_q of the family (q = inf by default)
  GridFunction residual;     // f - reconstruct
  double c10 = 0.0;          // max over atoms of ||h^k_i||_inf / 2^k
  std::vector<int> levels;   // k per atom, parallel to `atoms`
};

// Infimum lambda with sum_i phi(Q_i, norm_i/lambda) + phi(box, norm_0/lambda)
// <= 1, by bisection on the monotone sum.
double lambda_q(std::span<const Atom> atoms, const std::optional<Atom>& single,
                const GrowthFunction& phi, const Grid& grid,
                double tol = 1e-9);

// Level-set decomposition: Calderon-Zygmund at heights 2^k, telescoped
// into atoms h^k_i plus the bottom good part as the single atom. k_hi must
// put the top superlevel set empty.
AtomicDecomposition atomic_decompose(const GridFunction& f,
                                     const GrowthFunction& phi, int s,
                                     const GridFunction& maximal, int k_lo,
                                     int k_hi);

GridFunction reconstruct(const AtomicDecomposition& d, const Grid& grid);

// Min of the candidates' lambda values over those reconstructing f within
// tol; an upper bound on the true infimum.
double finite_atomic_norm(const GridFunction& f,
                          std::span<const AtomicDecomposition> candidates,
                          double tol = 1e-6);

}  // namespace mol
