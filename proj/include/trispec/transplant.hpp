#pragma once

// Algebra of linear transplantation between the fan triangles T(a,b).
//
// Pushing the first n eigenfunctions of T(a,b) through the linear map that
// carries T(c,d) onto T(a,b) gives trial functions on T(c,d). Their summed
// Rayleigh quotients depend on the eigenfunctions only through two energy
// fractions gamma (y-derivative) and delta (mixed xy-derivative), so
// Lambda_n(a,b) > C Lambda_n(c,d) whenever lemtrace_lhs < 1/C.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "trispec/geometry.hpp"
#include "trispec/report.hpp"

namespace trispec::transplant {

struct TransplantCondition {
  double a = 0.0;
  double b = sqrt3;
  double c = 0.0;
  double d = sqrt3;
  double C = 1.0;
  double gamma = 0.5;
  double delta = 0.0;

  void validate() const {
    if (!(b > 0.0 && d > 0.0 && C > 0.0)) throw std::invalid_argument("transplant condition needs b, d, C > 0");
  }
  /// Sufficient condition for Lambda_n(a,b) > C Lambda_n(c,d).
  bool holds() const;
};

/// d^-2 [ ((a-c)^2 + d^2)(1 - gamma) + 2b(a-c) delta + b^2 gamma ]
inline double lemtrace_lhs(const TransplantCondition& k) {
  k.validate();
  double s = k.a - k.c;
  return ((s * s + k.d * k.d) * (1.0 - k.gamma) + 2.0 * k.b * s * k.delta + k.b * k.b * k.gamma) / (k.d * k.d);
}

inline bool TransplantCondition::holds() const { return lemtrace_lhs(*this) < 1.0 / C; }

enum class Branch { equilateral, right };

inline const char* to_string(Branch b) { return b == Branch::equilateral ? "equilateral" : "right"; }

/// Which comparison triangle the subequilateral T(0,b) is transplanted
/// from. gamma < 3/4 uses the equilateral E = T(0, sqrt 3); otherwise the
/// right triangles F+- = T(+-1, 2 sqrt 3), whose condition reduces to
/// b^2 + 50 / (11 - 8 gamma) > 13.
inline Branch prop_unknown_branch(double b, double gamma) {
  if (!(b > sqrt3)) throw std::domain_error("branch selection needs a subequilateral b > sqrt 3");
  if (gamma < 0.75) return Branch::equilateral;
  if (!(b * b + 50.0 / (11.0 - 8.0 * gamma) > 13.0))
    throw std::logic_error("right-triangle condition b^2 + 50/(11 - 8 gamma) > 13 violated");
  return Branch::right;
}

/// Equilateral-branch condition for T(0,b): (1 - gamma) + b^2 gamma / 3
/// against 1/C with C = 4 / (1 + b^2).
inline TransplantCondition equilateral_condition(double b, double gamma, double delta) {
  return {0.0, b, 0.0, sqrt3, 4.0 / (1.0 + b * b), gamma, delta};
}

/// Right-branch condition for T(0,b) against F+ (sign = +1) or F- (sign = -1),
/// with C = (6/11) 4^2 / (1 + b^2).
inline TransplantCondition right_condition(double b, double gamma, double delta, int sign) {
  return {0.0, b, static_cast<double>(sign), 2.0 * sqrt3, 6.0 / 11.0 * 16.0 / (1.0 + b * b), gamma, delta};
}

struct CFuncs {
  double C;
  double Ctilde;
};

/// C(b) = (3b^4 + 68b^2 + 9) / (20 b^2 (b^2 + 1)) and
/// Ctilde(b) = (13 b^2 + 81) / (40 b^2).
inline CFuncs C_funcs(double b) {
  if (!(b > 0.0)) throw std::invalid_argument("C_funcs: b must be positive");
  double b2 = b * b;
  return {(3.0 * b2 * b2 + 68.0 * b2 + 9.0) / (20.0 * b2 * (b2 + 1.0)), (13.0 * b2 + 81.0) / (40.0 * b2)};
}

/// Right side of the reduced interpolation inequality Ctilde(h) > rhs(b).
inline double condch_rhs(double h, double b) {
  double h2 = h * h;
  return 3.0 * (h2 + 17.0) / (20.0 * h2) + 7.0 * (h2 - 3.0) / (10.0 * h2 * (b * b + 1.0));
}

/// Checks Ctilde(h) > rhs(b) strictly on the grid (b > sqrt 3), equality at
/// b = sqrt 3, and that rhs decreases along the grid.
inline Report condCh_verify(double h, const std::vector<double>& b_grid) {
  if (!(h > sqrt3)) throw std::domain_error("condCh_verify needs h > sqrt 3");
  Report r;
  r.claim = "Ctilde(h) > 3(h^2+17)/(20h^2) + 7(h^2-3)/(10h^2(b^2+1)) for sqrt3 < b < h";
  const double ct = C_funcs(h).Ctilde;
  double eq = condch_rhs(h, sqrt3);
  r.add(exact_check("equality at b = sqrt3 (|diff| < 1e-12)", ct, eq, std::abs(ct - eq) < 1e-12));
  double prev = eq;
  bool decreasing = true;
  for (double b : b_grid) {
    if (!(b > sqrt3 && b < h)) continue;
    double rhs = condch_rhs(h, b);
    r.add(exact_check("b = " + std::to_string(b), ct, rhs, ct > rhs));
    if (!(rhs < prev)) decreasing = false;
    prev = rhs;
  }
  r.add(exact_check("rhs strictly decreasing in b on grid", 0.0, 0.0, decreasing));
  r.note("Ctilde(h)", ct);
  return r;
}

/// n uniformly spaced points strictly inside (lo, hi).
inline std::vector<double> open_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 1; i <= n; ++i) g.push_back(lo + (hi - lo) * i / (n + 1));
  return g;
}

/// n points log-uniform in (lo, hi]: lo (hi/lo)^(i/n), i = 1..n.
inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 1; i <= n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
  return g;
}

}  // namespace trispec::transplant
