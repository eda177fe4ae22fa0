#pragma once

#include <functional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "mol/grid.hpp"

namespace mol {

// Scalar Orlicz function Phi with its declared type exponents.
struct OrliczFunction {
  std::function<double(double)> eval;
  double lower_type = 1.0;  // p0
  double upper_type = 1.0;  // p1
  std::string name;

  double operator()(double t) const { return eval(t); }
};

// Musielak-Orlicz growth function phi(x,t) with declared type/weight
// metadata. The critical indices i(phi), q(phi) are infima/suprema over
// infinite families; this struct stores the declared values and sampled
// estimators live next to it as cross-checks.
struct GrowthFunction {
  std::function<double(const Vec&, double)> eval;
  int dim = 1;
  double lower_type = 1.0;     // declared p in (0,1]
  double lower_const = 1.0;    // C_low
  double upper_const = 1.0;    // C_up for the (fixed) upper type 1
  double declared_q = 1.0;     // claimed uniformly-local weight class
  bool x_independent = false;  // phi(x,t) = Phi(t)
  bool finite_on_rn = false;   // integral of phi(.,t) over R^n finite
  std::string name;

  double operator()(const Vec& x, double t) const { return eval(x, t); }
  // m(phi) = floor(n (q/p - 1)).
  int moment_degree() const;
  void validate_samples() const;
};

// phi(Q,t) := integral of phi(.,t) over the cells of Q (midpoint rule).
double phi_measure(const GrowthFunction& phi, const Grid& grid, const Cube& q,
                   double t);
// phi(box,t): whole-grid proxy for phi(R^n,t).
double phi_measure(const GrowthFunction& phi, const Grid& grid, double t);

enum class TypeSide { Lower, Upper };

struct TypeCheckResult {
  bool holds = false;
  double worst_constant = 0.0;
};

using TypeSample = std::tuple<Vec, double, double>;  // (x, s, t)

// Default dyadic (x,s,t) sample lattice: t,s in {2^k}, x on a coarse grid.
std::vector<TypeSample> default_type_samples(const Grid& grid, TypeSide side,
                                             int k_lo = -16, int k_hi = 16);

// Worst constant of phi(x,st) <= C s^p phi(x,t) over the samples.
TypeCheckResult check_uniform_type(const GrowthFunction& phi, double p,
                                   TypeSide side,
                                   std::span<const TypeSample> samples);

// Bisection for the largest lower type p passing with constant <= cap;
// a sampled lower bound on i(phi).
double estimate_lower_type_index(const GrowthFunction& phi,
                                 std::span<const TypeSample> samples,
                                 double tolerance, double constant_cap = 4.0);

// Builtin families.
GrowthFunction growth_product(std::function<double(const Vec&)> weight,
                              OrliczFunction Phi, double declared_q, int dim,
                              const std::string& name);
// phi(x,t) = t^alpha / ([ln(e+|x|)]^beta + [ln(e+t)]^gamma).
GrowthFunction growth_log(double alpha, double beta, double gamma, int dim);
// theta(t) = t/ln(e+t), x-independent.
GrowthFunction growth_theta(int dim, double declared_p = 0.5);
// phi(x,t) = t^p, x-independent.
GrowthFunction growth_power(double p, int dim);
// phi(x,t) = (1+|x|)^{weight_exp} t^p, tagged with a phi_alpha certificate.
GrowthFunction growth_phi_alpha_weighted(double weight_exp, double p,
                                         double alpha, int dim);

// Parse a JSON family descriptor, e.g.
// {"family":"log","alpha":1.0,"beta":1.0,"gamma":1.0}.
GrowthFunction parse_growth(const std::string& json_text, int dim);

// Dyadic t-samples {2^k : k in [k_lo, k_hi]}, plus 0.
std::vector<double> dyadic_samples(int k_lo, int k_hi);

}  // namespace mol
