#pragma once

#include <span>
#include <string>
#include <vector>

#include "mol/atoms.hpp"
#include "mol/grid.hpp"
#include "mol/growth.hpp"
#include "mol/weights.hpp"

namespace mol {

// Scalar positive increasing function r -> phi(r) on (0,inf), with the
// flags used by the multiplier criteria.
struct PhiIncreasing {
  std::function<double(double)> eval;
  bool almost_decreasing_ratio = false;  // phi(r)/r almost decreasing
  double lower_type = 1.0;
  bool satisfies_7_10 = false;  // phi comparable to its log-average
  std::string name;

  double operator()(double r) const { return eval(r); }
};

// Oscillation norm with chi-norm normalizers: small cubes (|Q| < 1)
// contribute ||chi_Q||^{-1} int_Q |f - P_Q^s f|, large cubes the plain
// average ||chi_Q||^{-1} int_Q |f|; a whole-box average term is added when
// phi integrates finitely over the space.
double bmo_phi_norm(const GridFunction& f, const GrowthFunction& phi, int s,
                    const CubeLattice& lattice);

// Single sup of the oscillation term over all lattice cubes.
double global_bmo_phi_norm(const GridFunction& f, const GrowthFunction& phi,
                           int s, const CubeLattice& lattice);

struct NakaiYabutaNorms {
  double bmo_small = 0.0;   // small-cube oscillation + large-cube average
  double bmo_global = 0.0;  // sup of phi(l(Q))^{-1}|Q|^{-1} int |f - f_Q|
};

// Mean-oscillation norms normalized by phi(l(Q))|Q|.
NakaiYabutaNorms nakai_yabuta_norms(const GridFunction& f,
                                    const PhiIncreasing& phi,
                                    const CubeLattice& lattice);

// psi(r) = phi(r) [ int_{min(1,r)}^2 phi(t)/t dt ]^{-1}.
PhiIncreasing psi_from_phi(const PhiIncreasing& phi);

// Orlicz function Phi_0 with eta(t) = psi(t^{-1/n})/t and Phi_0(t) =
// eta^{-1}(1/t), inverted on a cached log grid. Requires eta strictly
// decreasing on samples. Satisfies ||chi_Q||_{L^{Phi_0}} = psi(l(Q))|Q|.
OrliczFunction phi0_from_psi(const PhiIncreasing& psi, int n);

// Wrap a scalar Orlicz function as an x-independent growth function.
GrowthFunction growth_from_orlicz(const OrliczFunction& Phi, int dim);

// Worst |int g a| / ||g||_{bmo_phi} over the normalized atoms.
double duality_pairing_bound(const GridFunction& g, std::span<const Atom> atoms,
                             const GrowthFunction& phi, int s,
                             const CubeLattice& lattice);

struct MultiplierReport {
  double bmo_psi_norm = 0.0;  // ||g||_{BMO^psi}
  double sup_norm = 0.0;      // ||g||_inf
  std::vector<double> ratios;  // ||fg||_{bmo^phi} / ||f||_{bmo^phi}
  double worst_constant = 0.0;  // max ratio / (bmo_psi_norm + sup_norm)
};

MultiplierReport multiplier_check(const GridFunction& g,
                                  const PhiIncreasing& phi,
                                  std::span<const GridFunction> test_fs,
                                  const CubeLattice& lattice);

}  // namespace mol
