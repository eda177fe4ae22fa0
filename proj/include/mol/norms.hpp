#pragma once

#include <map>
#include <optional>
#include <span>

#include "mol/grid.hpp"
#include "mol/growth.hpp"

namespace mol {

struct LuxembourgResult {
  double norm = 0.0;             // lambda*
  double modular_at_norm = 0.0;  // integral of phi(x,|f|/lambda*)
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// inf{lambda > 0 : integral phi(x,|f|/lambda) <= 1}, by bisection on the
// monotone modular. Returns norm 0 for f == 0.
LuxembourgResult luxembourg_norm(const GrowthFunction& phi,
                                 const GridFunction& f, double tol = 1e-9);

// Scalar variant for x-independent phi and an indicator of measure `vol`:
// the modular is vol * Phi(1/lambda), so this works for cubes of any size
// without a grid.
double luxembourg_norm_indicator(const std::function<double(double)>& Phi,
                                 double vol, double tol = 1e-12);

// Weighted atom norm over a cube (q < inf):
//   sup_t [ phi(Q,t)^{-1} integral |f|^q phi(.,t) ]^{1/q},
// and the grid max of |f| on Q for q = inf. Pass no cube for the
// whole-space version (requires phi.finite_on_rn). The sup over all t is
// replaced by the supplied t-samples, so the value is a certified lower
// bound on the true norm.
double lq_phi_norm(const GridFunction& f, const std::optional<Cube>& Q,
                   double q, const GrowthFunction& phi,
                   std::span<const double> t_samples);

// ||chi_Q||_{L^phi}: Luxembourg norm of the cube indicator. Uses the exact
// scalar route when phi is x-independent (valid for cubes larger than the
// grid box), the grid modular otherwise.
double chi_norm(const Cube& Q, const GrowthFunction& phi, const Grid& grid,
                double tol = 1e-10);

// Memoizes chi_norm per cube; values are deterministic.
class ChiNormCache {
 public:
  double get(const Cube& Q, const GrowthFunction& phi, const Grid& grid,
             double tol = 1e-10);

 private:
  std::map<std::tuple<double, double, double>, double> cache_;
};

}  // namespace mol
