#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mol/grid.hpp"
#include "mol/growth.hpp"
#include "mol/norms.hpp"

namespace mol {

// Analytic test function centered at 0, vanishing outside the l2 ball of
// the given radius. Normalized on admission so that the sup of all
// finite-difference derivatives up to the dictionary order is <= 1.
struct TestFunction {
  std::function<double(const Vec&)> eval;
  double support_radius = 1.0;
  std::string name;
};

struct TestFunctionDictionary {
  std::vector<TestFunction> members;
  int order = 4;       // derivative order used for admission
  double radius = 1.0;  // every member supported in B(0,radius)
  std::string version;
};

// Bump-profile dictionary with members at radii <= R, each renormalized by
// its worst sampled derivative up to `order`. R = 1 gives the small-support
// family; larger R appends wider copies, so dictionaries are nested in R.
TestFunctionDictionary default_dictionary(int dim, int order, double R);

// Canonical mean-one smooth bump used as psi_0.
TestFunction default_psi0(int dim);

struct MaximalParams {
  int N = 4;
  double R = 1.0;
  double A = 0.0;
  double B = 0.0;
  int j_max = 6;
  std::vector<double> t_grid;  // scales in (0,1)

  void validate() const;
};

// 32 logarithmic scales in (h, 1) and j_max = log2(1/h) - 2.
MaximalParams default_params(const Grid& grid, int N = 4, double R = 1.0);

// (psi_t * f)(x) = t^{-n} int psi((x-y)/t) f(y) dy by direct midpoint sum.
GridFunction convolve_scaled(const GridFunction& f, const TestFunction& psi,
                             double t);

// Local Hardy-Littlewood maximal function: max over axis cubes Q containing
// x with |Q| <= size_cap of the average of |f| over Q.
GridFunction m_loc(const GridFunction& f, double size_cap);

enum class GrandVariant { Vertical, Nontangential };

// sup over psi in dict and t in the t-grid of |psi_t * f|; nontangential
// adds the sup over |x - z|_inf < t.
GridFunction grand_maximal(const GridFunction& f, const MaximalParams& params,
                           const TestFunctionDictionary& dict,
                           GrandVariant variant);

// sup over j in {0..j_max} of |(psi0)_j * f| with (psi0)_j = 2^{jn} psi0(2^j .).
GridFunction vertical_maximal(const GridFunction& f, const TestFunction& psi0,
                              int j_max);

// Nontangential companion: sup over j and |x - z|_inf < 2^{-j}.
GridFunction nontangential_maximal(const GridFunction& f,
                                   const TestFunction& psi0, int j_max);

// sup over j and offsets y of |(psi0)_j * f(x-y)| / [(1+2^j|y|)^A 2^{B|y|}].
GridFunction peetre_maximal(const GridFunction& f, const TestFunction& psi0,
                            double A, double B, int j_max);

// K_B f(x) = int |f(y)| 2^{-B|x-y|} dy.
GridFunction k_b_operator(const GridFunction& f, double B);

enum class MaximalKind { Grand, Vertical, Nontangential, Peetre };

// Luxembourg norm of the chosen maximal function.
double h_phi_quasinorm(const GridFunction& f, const GrowthFunction& phi,
                       const MaximalParams& params, MaximalKind which);

}  // namespace mol
