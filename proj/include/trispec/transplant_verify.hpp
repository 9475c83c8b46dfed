#pragma once

// Verification pipelines for the sum-of-eigenvalues and second-eigenvalue
// lower bounds over subequilateral triangles T(0,b).

#include <cmath>
#include <stdexcept>
#include <string>

#include "trispec/certify.hpp"
#include "trispec/equilateral.hpp"
#include "trispec/fem.hpp"
#include "trispec/geometry.hpp"
#include "trispec/report.hpp"
#include "trispec/transplant.hpp"

namespace trispec::transplant {

inline bool is_equilateral_b(double b) { return std::abs(b - sqrt3) < 1e-12; }

/// Exact Lambda_n D^2 of the equilateral triangle.
inline double equilateral_target(int n) {
  return equilateral::unit * static_cast<double>(equilateral::enumerate(n).q_sum(static_cast<std::size_t>(n)));
}

/// (6/11) Lambda_n D^2 of the half-equilateral F+- (antisymmetric spectrum).
inline double right_target(int n) {
  auto t = equilateral::enumerate(n, equilateral::ModeClass::antisym);
  return 6.0 / 11.0 * equilateral::unit * static_cast<double>(t.q_sum(static_cast<std::size_t>(n)));
}

/// FEM Lambda_n D^2 of T(0,b) against the exact equilateral value, plus the
/// transplantation branch selected by the computed gamma_n.
inline Report theorem1_verify(const FanTriangle& f, int n, int level = 8, const fem::SolverOptions& opt = {}) {
  if (f.a != 0.0 || f.b < sqrt3 - 1e-12) throw std::domain_error("theorem1_verify needs a subequilateral T(0,b)");
  if (n < 1) throw std::invalid_argument("theorem1_verify: n must be >= 1");
  const double b = f.b, d2 = 1.0 + b * b;
  Report r;
  r.claim = "Lambda_" + std::to_string(n) + " D^2 of T(0," + std::to_string(b) + ") exceeds the equilateral value";
  Triangle t = f.triangle();
  fem::Spectrum s = fem::solve_extrapolated(t, n + 1, level, fem::all_dirichlet, opt);
  const double lhs = s.sum(n) * d2, err = s.sum_error(n) * d2;
  const double target_e = equilateral_target(n), target_f = right_target(n);
  r.note("b", b);
  r.note("n", n);
  r.note("Lambda_n_D2", lhs);
  r.note("error_estimate", err);
  r.note("equilateral_target", target_e);
  r.note("right_target", target_f);

  if (is_equilateral_b(b)) {
    r.add(exact_check("equilateral: Lambda_n D^2 matches exact value within 0.5%", lhs, target_e,
                      std::abs(lhs - target_e) < 0.005 * target_e));
    r.note("branch", "none");
    return r;
  }
  r.add(fem_greater("Lambda_n D^2 > equilateral target", lhs, target_e, err));
  r.add(fem_greater("Lambda_n D^2 > min(equilateral, 6/11 right) target", lhs, std::min(target_e, target_f), err));

  try {
    fem::RayleighData g = fem::rayleigh_data(t, s, n);
    r.note("gamma", g.gamma);
    r.note("delta", g.delta);
    Branch br = prop_unknown_branch(b, g.gamma);
    r.note("branch", to_string(br));
    if (br == Branch::equilateral) {
      auto k = equilateral_condition(b, g.gamma, g.delta);
      r.add(exact_check("equilateral branch condition lhs < 1/C", 1.0 / k.C, lemtrace_lhs(k), k.holds()));
    } else {
      auto kp = right_condition(b, g.gamma, g.delta, +1);
      auto km = right_condition(b, g.gamma, g.delta, -1);
      double lp = lemtrace_lhs(kp), lm = lemtrace_lhs(km);
      const auto& best = lp <= lm ? kp : km;
      r.note("sign", lp <= lm ? "+" : "-");
      r.add(exact_check("right branch condition lhs < 1/C", 1.0 / best.C, std::min(lp, lm), best.holds()));
    }
  } catch (const fem::cluster_split& e) {
    r.note("branch", "undetermined");
    r.note("branch_note", e.what());
  } catch (const std::logic_error& e) {
    r.note("branch", "right");
    r.add({"right branch condition", 0, 0, 0, Verdict::fail, e.what()});
  }
  return r;
}

/// lambda_2(0,b) > 112 pi^2 / (9 (b^2+1)): sector chain for b >= 5/2,
/// Lemma-style pipeline (interpolation condition plus certified lambda_2 of
/// T(0,5/2)) below, and an independent FEM check. `certified` may carry a
/// precomputed certification report.
inline Report theorem2_verify(double b, int level = 8, const Report* certified = nullptr) {
  if (b < sqrt3 - 1e-12) throw std::domain_error("theorem2_verify needs b >= sqrt 3");
  const double target = 112.0 * pi * pi / 9.0;
  const double d2 = 1.0 + b * b;
  Report r;
  r.claim = "lambda_2 D^2 of T(0," + std::to_string(b) + ") > 7*16pi^2/9";
  r.note("b", b);
  r.note("target", target);

  if (!is_equilateral_b(b)) {
    if (b >= 2.5) {
      r.note("branch", "sector");
      const double nu = pi / (2.0 * std::atan(2.0 / 5.0));
      const double j = certify::bessel_zero(nu, 2);
      r.add(exact_check("j_{nu,2}^2 > 112pi^2/9 at aperture 2 arctan(2/5)", j * j, target, j * j > target));
      const double nu_b = pi / (2.0 * std::atan(1.0 / b));
      r.add(exact_check("aperture of T(0,b) within sector aperture", nu_b, nu, nu_b >= nu - 1e-12));
      if (nu_b <= 50.0) {
        const double jb = certify::bessel_zero(nu_b, 2);
        r.add(exact_check("j_{nu_b,2}^2 >= j_{nu,2}^2", jb * jb, j * j, jb >= j - 1e-10));
        r.note("j_nu_b_2_squared", jb * jb);
      }
      r.note("nu", nu);
      r.note("j_nu_2_squared", j * j);
    } else {
      r.note("branch", "interpolation");
      r.merge(condCh_verify(2.5, {b}), "condch: ");
      Report cert = certified ? *certified : certify::lemma62_verify();
      r.merge(cert, "certify: ");
      auto c = C_funcs(b);
      const double lower_sum = c.C * 40.0 * pi * pi / 9.0;
      const double polya = polya_upper(FanTriangle(0.0, b).triangle());
      const double polya_closed = 2.0 * pi * pi * (b * b + 3.0) / (3.0 * b * b);
      r.add(exact_check("polya upper bound matches 2pi^2(b^2+3)/(3b^2)", polya, polya_closed,
                        std::abs(polya - polya_closed) < 1e-12 * polya_closed));
      const double implied = (lower_sum - polya_closed) * d2;
      r.add(exact_check("C(b) Lambda_2(E) minus polya bound reaches target", implied, target,
                        std::abs(implied - target) < 1e-10 * target));
      r.note("C(b)", c.C);
      r.note("Ctilde(b)", c.Ctilde);
    }
  } else {
    r.note("branch", "equilateral");
  }

  fem::Spectrum s = fem::solve_extrapolated(FanTriangle(0.0, b).triangle(), 2, level);
  const double l2d2 = s.values[1] * d2, err = s.errors[1] * d2;
  r.note("fem_lambda2_D2", l2d2);
  r.note("fem_error", err);
  if (is_equilateral_b(b)) {
    r.add(exact_check("FEM lambda_2 D^2 equals target within 1%", l2d2, target, std::abs(l2d2 - target) < 0.01 * target));
    r.add({"strict inequality at the equilateral", l2d2, target, l2d2 - target, Verdict::inconclusive,
           "equality case"});
  } else {
    r.add(fem_greater("FEM lambda_2 D^2 > 112pi^2/9", l2d2, target, err));
    if (b < 2.5) {
      const double lam = (s.values[0] + s.values[1]), lerr = s.errors[0] + s.errors[1];
      r.add(fem_greater("FEM Lambda_2(0,b) > C(b) Lambda_2(E)", lam, C_funcs(b).C * 40.0 * pi * pi / 9.0, lerr));
    }
  }
  return r;
}

}  // namespace trispec::transplant
