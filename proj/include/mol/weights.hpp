#pragma once

#include <span>
#include <vector>

#include "mol/grid.hpp"
#include "mol/growth.hpp"

namespace mol {

// Finite family of cubes used as the scan domain for weight constants.
// Centers sit on a sub-grid, sidelengths are dyadic multiples of h, and
// every cube satisfies |Q| <= size_cap.
struct CubeLattice {
  std::vector<Cube> cubes;
  double size_cap = 1.0;

  void validate(int dim) const;
};

// Default lattice: centers on every `center_stride`-th cell, sidelengths
// h*2^k while the cube fits in the box and respects the cap.
CubeLattice default_lattice(const Grid& grid, double size_cap,
                            int center_stride = 4);
// Same construction without the measure cap (cubes up to the box size).
CubeLattice uncapped_lattice(const Grid& grid, int center_stride = 4);

// Muckenhoupt-type constant over the lattice:
//   p > 1: max over Q of |Q|^{-p} (int_Q w)(int_Q w^{-p'/p})^{p/p'},
//   p = 1: max over Q of (|Q|^{-1} int_Q w) * max_Q(1/w).
// Essential sup/inf are grid max/min over the cells of Q.
double a_p_loc_constant(const GridFunction& w, double p,
                        const CubeLattice& lattice);

// Uniform version: the same scan with w = phi(., t), worst case over the
// t-samples.
double a_p_loc_constant(const GrowthFunction& phi, const Grid& grid,
                        std::span<const double> t_samples, double p,
                        const CubeLattice& lattice);

// Weight constant normalized by phi_alpha(|Q|)|Q| instead of |Q|, with
// phi_alpha(t) = (1+t)^alpha; lattice may carry cubes of any size.
double a_p_phi_alpha_constant(const GrowthFunction& phi, const Grid& grid,
                              std::span<const double> t_samples, double p,
                              double alpha, const CubeLattice& lattice);

struct DoublingReport {
  double worst_ratio_small = 0.0;  // phi(2Q,t)/phi(Q,t) over l(Q) < 1
  double worst_ratio_large = 0.0;  // phi(Q(x0,l+1),t)/phi(Q,t) over l >= 1
};

// Both doublings require the enlarged cube to stay inside the grid box;
// cubes whose enlargement leaks are skipped.
DoublingReport check_doubling(const GrowthFunction& phi, const Grid& grid,
                              std::span<const double> t_samples,
                              const CubeLattice& lattice);

// Worst constant of |E|/(phi_alpha(|Q|)|Q|) <= C (phi(E,t)/phi(Q,t))^{1/p}
// over the supplied nested pairs E subset Q.
double check_measure_ratio(const GrowthFunction& phi, const Grid& grid,
                           double p, double alpha,
                           std::span<const std::pair<Cube, Cube>> pairs,
                           std::span<const double> t_samples);

}  // namespace mol
