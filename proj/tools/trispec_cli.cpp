#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "trispec/certify.hpp"
#include "trispec/equilateral.hpp"
#include "trispec/fem.hpp"
#include "trispec/geometry.hpp"
#include "trispec/io.hpp"
#include "trispec/isosceles.hpp"
#include "trispec/report.hpp"
#include "trispec/transplant.hpp"
#include "trispec/transplant_verify.hpp"

using namespace trispec;

namespace {

constexpr int exit_usage = 64;

struct RunConfig {
  int n = -1;
  int level = -1;
  double alpha_min = pi / 6.0;
  double alpha_max = 2.0 * pi / 3.0;
  int alpha_steps = -1;
  double a = 0.0;
  double b = 2.5;
  double tol = 1e-10;
  double kappa = 334.0 / 75.0;
  std::string mode_class = "full";
  std::string scaling = "side";
  std::string out;
  std::string format;
  bool refine = false;

  int n_or(int d) const { return n < 0 ? d : n; }
  int level_or(int d) const { return level < 0 ? d : level; }
  int steps_or(int d) const { return alpha_steps < 0 ? d : alpha_steps; }
  std::string format_or(const std::string& d) const { return format.empty() ? d : format; }
};

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::inconclusive: return 2;
  }
  return 1;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
  f << text;
}

int emit_report(const RunConfig& cfg, const Report& r) {
  std::string fmt = cfg.format_or("json");
  if (fmt == "csv") {
    std::ostringstream os;
    io::write_csv(os, r);
    emit(cfg, os.str());
  } else {
    emit(cfg, io::dump(io::to_json(r)));
  }
  return exit_code(r.verdict());
}

fem::SolverOptions solver_options(const RunConfig& cfg) {
  fem::SolverOptions opt;
  opt.tolerance = cfg.tol;
  return opt;
}

std::vector<double> alpha_grid(const RunConfig& cfg, int default_steps) {
  return isosceles::uniform_grid(cfg.alpha_min, cfg.alpha_max, cfg.steps_or(default_steps));
}

int run_spectrum(const RunConfig& cfg) {
  auto t = equilateral::enumerate(cfg.n_or(110), equilateral::parse_mode_class(cfg.mode_class));
  if (cfg.format_or("csv") == "json") {
    emit(cfg, io::dump(io::to_json(t)));
  } else {
    std::ostringstream os;
    io::write_csv(os, t);
    emit(cfg, os.str());
  }
  return 0;
}

int run_sweep(const RunConfig& cfg) {
  auto grid = alpha_grid(cfg, 61);
  int level = cfg.level_or(7);
  auto scaling = isosceles::parse_scaling(cfg.scaling);
  isosceles::SweepTable side = cfg.refine ? isosceles::sweep_refined(grid, level)
                                          : isosceles::sweep(grid, isosceles::Scaling::side, level);
  auto t = isosceles::rescale(side, scaling);
  if (cfg.format_or("csv") == "json") {
    auto j = io::to_json(t);
    for (auto c : {isosceles::Curve::lambda1, isosceles::Curve::lambda_a, isosceles::Curve::lambda_s}) {
      try {
        auto m = isosceles::find_min(t, c);
        j["minima"][isosceles::to_string(c)] = {{"alpha", m.alpha}, {"value", m.value}};
      } catch (const std::domain_error&) {
        j["minima"][isosceles::to_string(c)] = nullptr;
      }
    }
    emit(cfg, io::dump(j));
  } else {
    std::ostringstream os;
    io::write_csv(os, t);
    emit(cfg, os.str());
  }
  return 0;
}

int run_fem(const RunConfig& cfg) {
  FanTriangle f(cfg.a, cfg.b);
  auto s = fem::solve_extrapolated(f.triangle(), cfg.n_or(3), cfg.level_or(7), fem::all_dirichlet, solver_options(cfg));
  auto j = io::to_json(s);
  j["a"] = cfg.a;
  j["b"] = cfg.b;
  j["diameter"] = f.diameter();
  emit(cfg, io::dump(j));
  return 0;
}

int run_gamma(const RunConfig& cfg) {
  auto d = fem::rayleigh_data(FanTriangle(cfg.a, cfg.b), cfg.n_or(2), cfg.level_or(7), solver_options(cfg));
  auto j = io::to_json(d);
  j["a"] = cfg.a;
  j["b"] = cfg.b;
  emit(cfg, io::dump(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet eigenvalues of triangles: exact equilateral spectra, FEM, certified bounds, verifications"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sc) {
    sc->add_option("--out", cfg.out, "Write output to this file instead of stdout");
    sc->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_n = [&cfg](CLI::App* sc, const std::string& what) { sc->add_option("--n", cfg.n, what)->check(CLI::PositiveNumber); };
  auto add_level = [&cfg](CLI::App* sc, int d) {
    sc->add_option("--level", cfg.level, "Mesh refinement level (default " + std::to_string(d) + ")")
        ->check(CLI::Range(1, fem::max_level));
  };
  auto add_alpha = [&cfg](CLI::App* sc, int steps) {
    sc->add_option("--alpha-min", cfg.alpha_min, "Smallest aperture, radians (default pi/6)");
    sc->add_option("--alpha-max", cfg.alpha_max, "Largest aperture, radians (default 2pi/3)");
    sc->add_option("--alpha-steps", cfg.alpha_steps, "Number of grid points (default " + std::to_string(steps) + ")")
        ->check(CLI::Range(3, 100000));
  };
  auto add_tol = [&cfg](CLI::App* sc) { sc->add_option("--tol", cfg.tol, "Eigensolver relative residual tolerance"); };

  auto* spectrum = app.add_subcommand("spectrum", "Exact equilateral eigenvalue table");
  add_n(spectrum, "Number of eigenvalues (default 110)");
  spectrum->add_option("--class", cfg.mode_class, "Mode class")->check(CLI::IsMember({"full", "antisym", "sym"}));
  add_common(spectrum);

  auto* lattice = app.add_subcommand("lattice", "Brute-force eigenvalue counting against the counting bounds");
  add_n(lattice, "Number of log-spaced lambda values (default 200)");
  add_common(lattice);

  auto* verify = app.add_subcommand("verify", "Check an inequality and report pass/fail/inconclusive");
  verify->require_subcommand(1);
  auto* v_lemma = verify->add_subcommand("lemma-explicit", "6 q^a_j > 11 q_j for j <= 110 except j = 4");
  add_common(v_lemma);
  auto* v_comp = verify->add_subcommand("compequilateral", "Lambda^a_n > 11/6 Lambda_n for all n");
  add_n(v_comp, "Largest rank summed exactly (default 110)");
  add_common(v_comp);
  auto* v_t1 = verify->add_subcommand("theorem1", "FEM Lambda_n D^2 of T(0,b) above the equilateral value");
  v_t1->add_option("--b", cfg.b, "Apex height b >= sqrt3 (default 2.5)");
  add_n(v_t1, "Number of eigenvalues summed (default 1)");
  add_level(v_t1, 8);
  add_tol(v_t1);
  add_common(v_t1);
  auto* v_t2 = verify->add_subcommand("theorem2", "lambda_2 D^2 of T(0,b) above 7*16pi^2/9");
  v_t2->add_option("--b", cfg.b, "Apex height b >= sqrt3 (default 2.5)");
  add_level(v_t2, 8);
  add_common(v_t2);
  auto* v_condch = verify->add_subcommand("condch", "Reduced interpolation inequality on a grid of b in (sqrt3, h)");
  v_condch->add_option("--b", cfg.b, "Endpoint h > sqrt3 (default 2.5)");
  add_n(v_condch, "Grid points (default 50)");
  add_common(v_condch);
  auto* v_mono = verify->add_subcommand("monotonicity", "Interval monotonicity of isosceles tones");
  add_alpha(v_mono, 82);
  add_level(v_mono, 7);
  add_common(v_mono);
  auto* v_obs = verify->add_subcommand("observation", "Symmetry class of the second isosceles mode");
  add_alpha(v_obs, 61);
  add_level(v_obs, 7);
  add_common(v_obs);
  auto* v_right = verify->add_subcommand("right-family", "lambda1 A of right triangles versus smallest angle");
  add_n(v_right, "Grid points (default 16)");
  add_level(v_right, 7);
  add_common(v_right);

  auto* femc = app.add_subcommand("fem", "FEM eigenvalues of T(a,b) with Richardson extrapolation");
  femc->add_option("--a", cfg.a, "Apex abscissa (default 0)");
  femc->add_option("--b", cfg.b, "Apex height (default 2.5)");
  add_n(femc, "Number of eigenvalues (default 3)");
  add_level(femc, 7);
  add_tol(femc);
  add_common(femc);

  auto* certifyc = app.add_subcommand("certify", "Certified enclosure of lambda_2 of T(0,5/2)");
  certifyc->add_option("--kappa", cfg.kappa, "Trial-function frequency (default 334/75)");
  add_level(certifyc, 8);
  add_common(certifyc);

  auto* sweepc = app.add_subcommand("sweep", "Isosceles tones over an aperture grid");
  add_alpha(sweepc, 61);
  add_level(sweepc, 7);
  sweepc->add_option("--scaling", cfg.scaling, "side, diameter, perimeter or area")
      ->check(CLI::IsMember({"side", "diameter", "perimeter", "area"}));
  sweepc->add_flag("--refine", cfg.refine, "Refine x4 near pi/3 and near each minimum");
  add_common(sweepc);

  auto* rect = app.add_subcommand("rectangle", "Rectangle minimizers of lambda_2 and lambda_1 + lambda_2");
  add_common(rect);

  auto* gammac = app.add_subcommand("gamma", "Energy fractions gamma_n and delta_n of T(a,b)");
  gammac->add_option("--a", cfg.a, "Apex abscissa (default 0)");
  gammac->add_option("--b", cfg.b, "Apex height (default 2.5)");
  add_n(gammac, "Number of eigenfunctions (default 2)");
  add_level(gammac, 7);
  add_tol(gammac);
  add_common(gammac);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  try {
    if (*spectrum) return run_spectrum(cfg);
    if (*lattice) return emit_report(cfg, equilateral::verify_counting(cfg.n_or(200)));
    if (*v_lemma) return emit_report(cfg, equilateral::verify_lemma_explicit());
    if (*v_comp) return emit_report(cfg, equilateral::verify_compequilateral(cfg.n_or(110)));
    if (*v_t1) return emit_report(cfg, transplant::theorem1_verify(FanTriangle(0.0, cfg.b), cfg.n_or(1), cfg.level_or(8),
                                                                   solver_options(cfg)));
    if (*v_t2) return emit_report(cfg, transplant::theorem2_verify(cfg.b, cfg.level_or(8)));
    if (*v_condch)
      return emit_report(cfg, transplant::condCh_verify(cfg.b, transplant::open_grid(sqrt3, cfg.b, cfg.n_or(50))));
    if (*v_mono) {
      auto t = isosceles::sweep(alpha_grid(cfg, 82), isosceles::Scaling::side, cfg.level_or(7));
      int solves = isosceles::sharpen_unresolved(t, cfg.level_or(7) + 2);
      auto r = isosceles::verify_monotonicity(t);
      r.note("sharpened_rows", static_cast<double>(solves));
      return emit_report(cfg, r);
    }
    if (*v_obs) {
      auto grid = isosceles::refine_grid(alpha_grid(cfg, 61), {pi / 3.0});
      auto t = isosceles::sweep(grid, isosceles::Scaling::side, cfg.level_or(7));
      return emit_report(cfg, isosceles::observation_crossing(t));
    }
    if (*v_right) return emit_report(cfg, isosceles::verify_right_family(cfg.level_or(7), cfg.n_or(16)));
    if (*femc) return run_fem(cfg);
    if (*certifyc) return emit_report(cfg, certify::lemma62_verify(cfg.kappa, cfg.level_or(8)));
    if (*sweepc) return run_sweep(cfg);
    if (*rect) return emit_report(cfg, verify_rectangle());
    if (*gammac) return run_gamma(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << app.help();
  return exit_usage;
}
