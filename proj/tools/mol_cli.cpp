// Command-line front door: one experiment per invocation, JSON config in,
// JSON/CSV artifacts out. Exit codes: 0 success, 1 check failure, 2
// usage/config error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mol/atoms.hpp"
#include "mol/bmo.hpp"
#include "mol/corpus.hpp"
#include "mol/czd.hpp"
#include "mol/grid.hpp"
#include "mol/growth.hpp"
#include "mol/maximal.hpp"
#include "mol/norms.hpp"
#include "mol/operators.hpp"
#include "mol/verify.hpp"
#include "mol/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
  return j;
}

mol::Grid parse_grid(const json& j) {
  mol::Grid g;
  g.dim = j.value("dim", 1);
  const auto o = j.value("origin", std::vector<double>{-4.0, 0.0});
  g.origin = mol::Vec{o.size() > 0 ? o[0] : 0.0, o.size() > 1 ? o[1] : 0.0};
  g.extent = j.value("extent", 8.0);
  g.npts = j.value("npts", 512);
  g.validate();
  return g;
}

mol::GrowthFunction parse_growth_block(const json& j, int dim) {
  return mol::parse_growth(j.dump(), dim);
}

mol::GridFunction load_function(const json& j, const mol::Grid& g) {
  const std::string kind = j.value("kind", "corpus");
  if (kind == "corpus") {
    mol::CorpusSpec spec;
    spec.families = {j.value("family", std::string("bumps"))};
    const int index = j.value("index", 0);
    spec.per_family = index + 1;
    const auto fns = mol::generate_corpus(j.value("seed", std::uint64_t(20260823)),
                                          spec, g);
    return fns.at(index).values;
  }
  if (kind == "indicator") {
    const auto c = j.value("center", std::vector<double>{0.0, 0.0});
    const mol::Cube q{mol::Vec{c[0], c.size() > 1 ? c[1] : 0.0},
                      j.value("side", 1.0)};
    return mol::GridFunction::sample(
        g, [&](const mol::Vec& x) { return q.contains(x, g.dim) ? 1.0 : 0.0; });
  }
  if (kind == "file") return mol::read_binary(j.at("path").get<std::string>());
  throw std::runtime_error("unknown input kind: " + kind);
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << '\n';
}

struct Common {
  std::string config_path;
  std::string out_dir = "out";
};

int run_norm(const Common& c) {
  const json cfg = load_config(c.config_path);
  const mol::Grid g = parse_grid(cfg.value("grid", json::object()));
  const mol::GrowthFunction phi =
      parse_growth_block(cfg.value("growth", json{{"family", "theta"}}), g.dim);
  const mol::GridFunction f = load_function(cfg.value("input", json::object()), g);
  const mol::LuxembourgResult r = mol::luxembourg_norm(phi, f);
  fs::create_directories(c.out_dir);
  write_json(json{{"norm", r.norm},
                  {"modular_at_norm", r.modular_at_norm},
                  {"iterations", r.iterations},
                  {"growth", phi.name}},
             fs::path(c.out_dir) / "norm.json");
  std::printf("norm %.17g modular %.17g\n", r.norm, r.modular_at_norm);
  return 0;
}

int run_weights(const Common& c) {
  const json cfg = load_config(c.config_path);
  const mol::Grid g = parse_grid(cfg.value("grid", json::object()));
  const mol::GrowthFunction phi =
      parse_growth_block(cfg.value("growth", json{{"family", "theta"}}), g.dim);
  const double p = cfg.value("p", 1.0);
  const mol::CubeLattice lat =
      mol::default_lattice(g, cfg.value("size_cap", 1.0), cfg.value("stride", 4));
  const auto ts = mol::dyadic_samples(cfg.value("t_lo", -6), cfg.value("t_hi", 6));
  const double ap = mol::a_p_loc_constant(phi, g, ts, p, lat);
  const mol::DoublingReport dr = mol::check_doubling(phi, g, ts, lat);
  fs::create_directories(c.out_dir);
  write_json(json{{"a_p_loc", ap},
                  {"p", p},
                  {"doubling_small", dr.worst_ratio_small},
                  {"doubling_large", dr.worst_ratio_large},
                  {"cubes", lat.cubes.size()}},
             fs::path(c.out_dir) / "weights.json");
  std::printf("A_%g^loc = %.17g over %zu cubes\n", p, ap, lat.cubes.size());
  return 0;
}

int run_maximal(const Common& c) {
  const json cfg = load_config(c.config_path);
  const mol::Grid g = parse_grid(cfg.value("grid", json::object()));
  const mol::GrowthFunction phi =
      parse_growth_block(cfg.value("growth", json{{"family", "theta"}}), g.dim);
  const mol::GridFunction f = load_function(cfg.value("input", json::object()), g);
  const std::string kind = cfg.value("kind", std::string("vertical"));
  mol::MaximalParams mp = mol::default_params(g, cfg.value("N", 4),
                                              cfg.value("R", 1.0));
  mp.A = cfg.value("A", 2.0);
  mp.B = cfg.value("B", 1.0);
  mol::GridFunction mf;
  mol::MaximalKind mk;
  if (kind == "grand") {
    mk = mol::MaximalKind::Grand;
    mf = mol::grand_maximal(f, mp, mol::default_dictionary(g.dim, mp.N, mp.R),
                            mol::GrandVariant::Vertical);
  } else if (kind == "vertical") {
    mk = mol::MaximalKind::Vertical;
    mf = mol::vertical_maximal(f, mol::default_psi0(g.dim), mp.j_max);
  } else if (kind == "nontangential") {
    mk = mol::MaximalKind::Nontangential;
    mf = mol::nontangential_maximal(f, mol::default_psi0(g.dim), mp.j_max);
  } else if (kind == "peetre") {
    mk = mol::MaximalKind::Peetre;
    mf = mol::peetre_maximal(f, mol::default_psi0(g.dim), mp.A, mp.B, mp.j_max);
  } else {
    throw std::runtime_error("unknown maximal kind: " + kind);
  }
  fs::create_directories(c.out_dir);
  mol::write_csv(mf, (fs::path(c.out_dir) / "maximal.csv").string());
  const double qn = mol::h_phi_quasinorm(f, phi, mp, mk);
  write_json(json{{"kind", kind}, {"quasinorm", qn}, {"max", mf.max_abs()}},
             fs::path(c.out_dir) / "maximal.json");
  std::printf("%s maximal: sup %.17g, h_phi quasinorm %.17g\n", kind.c_str(),
              mf.max_abs(), qn);
  return 0;
}

int run_czd(const Common& c) {
  const json cfg = load_config(c.config_path);
  const mol::Grid g = parse_grid(cfg.value("grid", json::object()));
  const mol::GridFunction f = load_function(cfg.value("input", json::object()), g);
  mol::MaximalParams mp = mol::default_params(g);
  const mol::GridFunction mf = mol::grand_maximal(
      f, mp, mol::default_dictionary(g.dim, mp.N, mp.R),
      mol::GrandVariant::Vertical);
  const double lambda = cfg.value("lambda", mf.max_abs() / 4.0);
  const int s = cfg.value("s", 1);
  const mol::CZDecomposition dec = mol::cz_decompose(f, lambda, s, mf);
  mol::GridFunction rec = dec.good;
  for (const auto& b : dec.bad)
    for (std::int64_t i = 0; i < g.size(); ++i) rec[i] += b[i];
  double err = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    err = std::max(err, std::abs(rec[i] - f[i]));
  fs::create_directories(c.out_dir);
  std::vector<std::vector<double>> rows;
  for (const auto& wq : dec.cover.cubes)
    rows.push_back({wq.cube.center[0], wq.cube.center[1], wq.cube.side, wq.dist,
                    wq.sandwich_ok ? 1.0 : 0.0});
  mol::write_table_csv((fs::path(c.out_dir) / "whitney.csv").string(),
                       {"cx", "cy", "side", "dist", "sandwich_ok"}, rows);
  write_json(json{{"lambda", lambda},
                  {"cubes", dec.cover.cubes.size()},
                  {"overlap", dec.cover.overlap},
                  {"reconstruction_error", err}},
             fs::path(c.out_dir) / "czd.json");
  std::printf("lambda %.17g: %zu cubes, overlap %d, recon error %.3g\n", lambda,
              dec.cover.cubes.size(), dec.cover.overlap, err);
  return 0;
}

int run_atoms(const Common& c) {
  const json cfg = load_config(c.config_path);
  const mol::Grid g = parse_grid(cfg.value("grid", json::object()));
  const mol::GrowthFunction phi =
      parse_growth_block(cfg.value("growth", json{{"family", "theta"}}), g.dim);
  const mol::GridFunction f = load_function(cfg.value("input", json::object()), g);
  mol::MaximalParams mp = mol::default_params(g);
  const mol::GridFunction mf = mol::grand_maximal(
      f, mp, mol::default_dictionary(g.dim, mp.N, mp.R),
      mol::GrandVariant::Vertical);
  int k_hi = -60;
  while (std::ldexp(1.0, k_hi) < mf.max_abs()) ++k_hi;
  k_hi = cfg.value("k_hi", k_hi);
  const int k_lo = cfg.value("k_lo", k_hi - 6);
  const int s = cfg.value("s", std::max(1, phi.moment_degree()));
  const mol::AtomicDecomposition ad =
      mol::atomic_decompose(f, phi, s, mf, k_lo, k_hi);
  fs::create_directories(c.out_dir);
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < ad.atoms.size(); ++i)
    rows.push_back({double(ad.levels[i]), ad.atoms[i].cube.center[0],
                    ad.atoms[i].cube.side, ad.atoms[i].norm, ad.atoms[i].scale});
  mol::write_table_csv((fs::path(c.out_dir) / "atoms.csv").string(),
                       {"level", "cx", "side", "norm", "scale"}, rows);
  write_json(json{{"atoms", ad.atoms.size()},
                  {"lambda", ad.lambda},
                  {"c10", ad.c10},
                  {"residual_max", ad.residual.max_abs()},
                  {"single_atom", ad.single_atom.has_value()}},
             fs::path(c.out_dir) / "atoms.json");
  std::printf("%zu atoms, lambda %.17g, c10 %.17g, residual %.3g\n",
              ad.atoms.size(), ad.lambda, ad.c10, ad.residual.max_abs());
  return 0;
}

int run_bmo(const Common& c) {
  const json cfg = load_config(c.config_path);
  const mol::Grid g = parse_grid(cfg.value("grid", json::object()));
  const mol::GrowthFunction phi =
      parse_growth_block(cfg.value("growth", json{{"family", "theta"}}), g.dim);
  const mol::GridFunction f = load_function(cfg.value("input", json::object()), g);
  const int s = cfg.value("s", 0);
  const mol::CubeLattice lat = mol::uncapped_lattice(g, cfg.value("stride", 8));
  const double norm = mol::bmo_phi_norm(f, phi, s, lat);
  const double global = mol::global_bmo_phi_norm(f, phi, s, lat);
  fs::create_directories(c.out_dir);
  write_json(json{{"bmo_phi_norm", norm},
                  {"global_bmo_phi_norm", global},
                  {"s", s},
                  {"cubes", lat.cubes.size()}},
             fs::path(c.out_dir) / "bmo.json");
  std::printf("bmo_phi %.17g, global %.17g over %zu cubes\n", norm, global,
              lat.cubes.size());
  return 0;
}

int run_riesz(const Common& c) {
  const json cfg = load_config(c.config_path);
  const mol::Grid g = parse_grid(cfg.value("grid", json::object()));
  const mol::GridFunction f = load_function(cfg.value("input", json::object()), g);
  const int dir = cfg.value("direction", 1);
  const mol::GridFunction out = mol::riesz_local(f, dir);
  fs::create_directories(c.out_dir);
  mol::write_csv(out, (fs::path(c.out_dir) / "riesz.csv").string());
  write_json(json{{"direction", dir}, {"max", out.max_abs()}},
             fs::path(c.out_dir) / "riesz.json");
  std::printf("r_%d applied: sup %.17g\n", dir, out.max_abs());
  return 0;
}

int run_psdo(const Common& c) {
  const json cfg = load_config(c.config_path);
  const mol::Grid g = parse_grid(cfg.value("grid", json::object()));
  const mol::GridFunction f = load_function(cfg.value("input", json::object()), g);
  const std::string name = cfg.value("symbol", std::string("smoothing"));
  mol::Symbol sigma;
  sigma.name = name;
  if (name == "identity") {
    sigma.eval = [](double, double) { return 1.0; };
  } else if (name == "smoothing") {
    sigma.eval = [](double, double xi) { return 1.0 / std::sqrt(1.0 + xi * xi); };
    sigma.declared_bound = 4.0;  // third xi-derivative peaks near 2.2
  } else {
    throw std::runtime_error("unknown symbol: " + name);
  }
  std::vector<double> xs, xis;
  for (int i = -8; i <= 8; ++i) {
    xs.push_back(i * 0.5);
    xis.push_back(i * 2.0);
  }
  const mol::SymbolCheck chk = mol::check_symbol(sigma, xs, xis);
  if (!chk.ok) {
    std::fprintf(stderr,
                 "symbol rejected: worst constant %.3g at a=%d b=%d x=%g xi=%g\n",
                 chk.worst_constant, chk.worst_a, chk.worst_b, chk.worst_x,
                 chk.worst_xi);
    return 1;
  }
  const mol::GridFunction out = mol::psdo_apply(sigma, f);
  fs::create_directories(c.out_dir);
  mol::write_csv(out, (fs::path(c.out_dir) / "psdo.csv").string());
  write_json(json{{"symbol", name},
                  {"symbol_constant", chk.worst_constant},
                  {"max", out.max_abs()}},
             fs::path(c.out_dir) / "psdo.json");
  std::printf("psdo(%s) applied: sup %.17g\n", name.c_str(), out.max_abs());
  return 0;
}

int run_verify(const mol::VerifyConfig& vc) {
  const mol::VerificationReport rep = mol::run_acceptance(vc);
  for (const mol::CheckResult& c : rep.checks) {
    std::printf("%-28s %s  value=%.6g  %s\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.value, c.note.c_str());
  }
  std::printf("verify: %s\n", rep.all_pass() ? "all criteria pass" : "FAILURES");
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local Musielak-Orlicz Hardy space laboratory"};
  app.require_subcommand(1);

  Common common;
  mol::VerifyConfig vc;
  int (*handler)(const Common&) = nullptr;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", common.config_path, "JSON config file")
        ->required();
    sub->add_option("-o,--out", common.out_dir, "output directory");
  };
  add_common(app.add_subcommand("norm", "Luxembourg norm of a function")
                 ->callback([&] { handler = run_norm; }));
  add_common(app.add_subcommand("weights", "local weight constants")
                 ->callback([&] { handler = run_weights; }));
  add_common(app.add_subcommand("maximal", "maximal functions and quasinorms")
                 ->callback([&] { handler = run_maximal; }));
  add_common(app.add_subcommand("czd", "Calderon-Zygmund decomposition")
                 ->callback([&] { handler = run_czd; }));
  add_common(app.add_subcommand("atoms", "atomic decomposition")
                 ->callback([&] { handler = run_atoms; }));
  add_common(app.add_subcommand("bmo", "oscillation norms")
                 ->callback([&] { handler = run_bmo; }));
  add_common(app.add_subcommand("riesz", "local Riesz transform")
                 ->callback([&] { handler = run_riesz; }));
  add_common(app.add_subcommand("psdo", "pseudo-differential operator")
                 ->callback([&] { handler = run_psdo; }));
  CLI::App* verify = app.add_subcommand("verify", "acceptance suites");
  verify->add_option("--seed", vc.seed, "corpus seed");
  verify->add_option("-o,--out", vc.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(vc);
    return handler(common);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
