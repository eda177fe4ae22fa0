#include "mol/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace mol {

int GrowthFunction::moment_degree() const {
  const int m = int(std::floor(dim * (declared_q / lower_type - 1.0)));
  return std::max(m, 0);
}

void GrowthFunction::validate_samples() const {
  if (lower_type <= 0.0 || lower_type > 1.0)
    throw std::invalid_argument("declared lower type must lie in (0,1]");
  if (declared_q < 1.0) throw std::invalid_argument("declared q must be >= 1");
  const Vec probes[] = {vec1(0.0), vec1(1.0), vec2(-2.0, 3.0)};
  for (const Vec& x : probes) {
    if (eval(x, 0.0) != 0.0) throw std::invalid_argument("phi(x,0) must be 0");
    double prev = 0.0;
    for (int k = -12; k <= 12; ++k) {
      const double t = std::ldexp(1.0, k);
      const double v = eval(x, t);
      if (!(v > 0.0)) throw std::invalid_argument("phi(x,t) must be positive for t > 0");
      if (v + 1e-12 * std::abs(v) < prev)
        throw std::invalid_argument("phi(x,.) must be nondecreasing");
      prev = v;
    }
  }
}

double phi_measure(const GrowthFunction& phi, const Grid& grid, const Cube& q,
                   double t) {
  const double cell = std::pow(grid.h(), grid.dim);
  double s = 0.0;
  for (std::int64_t i = 0; i < grid.size(); ++i) {
    const Vec x = grid.cell_center(i);
    if (q.contains(x, grid.dim)) s += phi.eval(x, t);
  }
  return s * cell;
}

double phi_measure(const GrowthFunction& phi, const Grid& grid, double t) {
  const double cell = std::pow(grid.h(), grid.dim);
  double s = 0.0;
  for (std::int64_t i = 0; i < grid.size(); ++i) s += phi.eval(grid.cell_center(i), t);
  return s * cell;
}

std::vector<TypeSample> default_type_samples(const Grid& grid, TypeSide side,
                                             int k_lo, int k_hi) {
  std::vector<double> svals;
  if (side == TypeSide::Lower) {
    for (int k = k_lo; k <= 0; ++k) svals.push_back(std::ldexp(1.0, k));
    svals.push_back(1.0);
  } else {
    svals.push_back(1.0);
    for (int k = 1; k <= k_hi; ++k) svals.push_back(std::ldexp(1.0, k));
  }
  std::vector<double> tvals;
  for (int k = k_lo; k <= k_hi; ++k) tvals.push_back(std::ldexp(1.0, k));
  std::vector<Vec> xs;
  const int stride = std::max(1, grid.npts / 8);
  for (int i = 0; i < grid.npts; i += stride) {
    if (grid.dim == 1) {
      xs.push_back(grid.cell_center(i));
    } else {
      for (int j = 0; j < grid.npts; j += stride)
        xs.push_back(grid.cell_center(grid.index(i, j)));
    }
  }
  std::vector<TypeSample> out;
  out.reserve(xs.size() * svals.size() * tvals.size());
  for (const Vec& x : xs)
    for (double s : svals)
      for (double t : tvals) out.emplace_back(x, s, t);
  return out;
}

TypeCheckResult check_uniform_type(const GrowthFunction& phi, double p,
                                   TypeSide side,
                                   std::span<const TypeSample> samples) {
  if (samples.empty()) throw std::domain_error("empty type-check sample set");
  double worst = 0.0;
  for (const auto& [x, s, t] : samples) {
    if (side == TypeSide::Lower && s > 1.0)
      throw std::domain_error("lower-type samples need s <= 1");
    if (side == TypeSide::Upper && s < 1.0)
      throw std::domain_error("upper-type samples need s >= 1");
    const double denom = std::pow(s, p) * phi.eval(x, t);
    if (denom == 0.0) continue;  // phi(x,t)=0 with st=0 carries no information
    worst = std::max(worst, phi.eval(x, s * t) / denom);
  }
  const double cap = side == TypeSide::Lower ? phi.lower_const : phi.upper_const;
  return TypeCheckResult{worst <= cap * (1.0 + 1e-12), worst};
}

double estimate_lower_type_index(const GrowthFunction& phi,
                                 std::span<const TypeSample> samples,
                                 double tolerance, double constant_cap) {
  if (!(tolerance > 0.0)) throw std::domain_error("tolerance must be positive");
  auto passes = [&](double p) {
    return check_uniform_type(phi, p, TypeSide::Lower, samples).worst_constant <=
           constant_cap;
  };
  double lo = 1e-6;
  if (!passes(lo))
    throw std::runtime_error("not a growth function on samples: no lower type in (0,1]");
  if (passes(1.0)) return 1.0;
  double hi = 1.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? lo : hi) = mid;
  }
  return lo;
}

GrowthFunction growth_product(std::function<double(const Vec&)> weight,
                              OrliczFunction Phi, double declared_q, int dim,
                              const std::string& name) {
  GrowthFunction g;
  g.eval = [w = std::move(weight), f = Phi.eval](const Vec& x, double t) {
    return w(x) * f(t);
  };
  g.dim = dim;
  g.lower_type = Phi.lower_type;
  g.declared_q = declared_q;
  g.name = name;
  g.validate_samples();
  return g;
}

GrowthFunction growth_log(double alpha, double beta, double gamma, int dim) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("log family: alpha in (0,1]");
  if (beta < 0.0) throw std::domain_error("log family: beta >= 0");
  const double gmax = 2.0 * alpha * (1.0 + std::log(2.0));
  if (gamma < 0.0 || gamma > gmax)
    throw std::domain_error("log family: gamma in [0, 2 alpha (1+ln 2)]");
  GrowthFunction g;
  g.eval = [alpha, beta, gamma, dim](const Vec& x, double t) {
    if (t == 0.0) return 0.0;
    const double r = l2_norm(x, dim);
    return std::pow(t, alpha) /
           (std::pow(std::log(std::exp(1.0) + r), beta) +
            std::pow(std::log(std::exp(1.0) + t), gamma));
  };
  g.dim = dim;
  // i(phi) = alpha but is not attained; the sampled check at p = alpha
  // needs a generous constant on the dyadic lattice.
  g.lower_type = alpha;
  g.lower_const = 8.0;
  g.upper_const = 1.0;
  g.declared_q = 1.0;
  g.name = "log";
  g.validate_samples();
  return g;
}

GrowthFunction growth_theta(int dim, double declared_p) {
  GrowthFunction g;
  g.eval = [](const Vec&, double t) {
    return t == 0.0 ? 0.0 : t / std::log(std::exp(1.0) + t);
  };
  g.dim = dim;
  g.lower_type = declared_p;
  g.lower_const = 2.0;
  g.upper_const = 1.0;
  g.declared_q = 1.0;
  g.x_independent = true;
  g.name = "theta";
  g.validate_samples();
  return g;
}

GrowthFunction growth_power(double p, int dim) {
  if (!(p > 0.0)) throw std::domain_error("power family: p > 0");
  GrowthFunction g;
  g.eval = [p](const Vec&, double t) { return std::pow(t, p); };
  g.dim = dim;
  g.lower_type = std::min(p, 1.0);
  g.declared_q = 1.0;
  g.x_independent = true;
  g.name = "power(" + std::to_string(p) + ")";
  g.validate_samples();
  return g;
}

GrowthFunction growth_phi_alpha_weighted(double weight_exp, double p,
                                         double alpha, int dim) {
  if (weight_exp < 0.0) throw std::domain_error("weight exponent must be >= 0");
  GrowthFunction g;
  g.eval = [weight_exp, p, dim](const Vec& x, double t) {
    return std::pow(1.0 + l2_norm(x, dim), weight_exp) * std::pow(t, p);
  };
  g.dim = dim;
  g.lower_type = std::min(p, 1.0);
  g.declared_q = std::max(1.0, weight_exp + 1.0);
  g.name = "phi_alpha_weighted(a=" + std::to_string(alpha) + ")";
  g.validate_samples();
  return g;
}

GrowthFunction parse_growth(const std::string& json_text, int dim) {
  const auto j = nlohmann::json::parse(json_text);
  const std::string family = j.at("family").get<std::string>();
  if (family == "log")
    return growth_log(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                      j.at("gamma").get<double>(), dim);
  if (family == "theta") return growth_theta(dim, j.value("p", 0.5));
  if (family == "power") return growth_power(j.at("p").get<double>(), dim);
  if (family == "phi_alpha_weighted")
    return growth_phi_alpha_weighted(j.at("weight_exp").get<double>(),
                                     j.at("p").get<double>(),
                                     j.at("alpha").get<double>(), dim);
  if (family == "product") {
    // {"family":"product","weight":"one|exp_abs|poly","cap":c,"p":p}
    const std::string wname = j.value("weight", "one");
    const double cap = j.value("cap", 1e6);
    const double p = j.value("p", 1.0);
    std::function<double(const Vec&)> w;
    double q = 1.0;
    if (wname == "one") {
      w = [](const Vec&) { return 1.0; };
    } else if (wname == "exp_abs") {
      w = [dim, cap](const Vec& x) {
        return std::min(std::exp(l2_norm(x, dim)), cap);
      };
    } else if (wname == "poly") {
      const double a = j.value("weight_exp", 0.5);
      w = [dim, a](const Vec& x) { return std::pow(1.0 + l2_norm(x, dim), a); };
      q = 1.0 + a;
    } else {
      throw std::domain_error("unknown product weight: " + wname);
    }
    OrliczFunction Phi{[p](double t) { return std::pow(t, p); },
                       std::min(p, 1.0), std::min(p, 1.0), "t^p"};
    GrowthFunction g = growth_product(std::move(w), Phi, q, dim,
                                      "product(" + wname + ",t^" + std::to_string(p) + ")");
    g.x_independent = (wname == "one");
    return g;
  }
  throw std::domain_error("unknown growth family: " + family);
}

std::vector<double> dyadic_samples(int k_lo, int k_hi) {
  std::vector<double> out;
  out.push_back(0.0);
  for (int k = k_lo; k <= k_hi; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

}  // namespace mol
