#pragma once

// Low tones of the isosceles triangle T(alpha) as the aperture varies:
// fundamental tone, lowest antisymmetric tone, and lowest symmetric tone
// above the fundamental, under side, diameter, perimeter or area scaling.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trispec/fem.hpp"
#include "trispec/geometry.hpp"
#include "trispec/report.hpp"

namespace trispec::isosceles {

enum class Scaling { side, diameter, perimeter, area };

inline const char* to_string(Scaling s) {
  switch (s) {
    case Scaling::side: return "side";
    case Scaling::diameter: return "diameter";
    case Scaling::perimeter: return "perimeter";
    case Scaling::area: return "area";
  }
  return "side";
}

inline Scaling parse_scaling(std::string_view s) {
  if (s == "side") return Scaling::side;
  if (s == "diameter") return Scaling::diameter;
  if (s == "perimeter") return Scaling::perimeter;
  if (s == "area") return Scaling::area;
  throw std::invalid_argument("unknown scaling: " + std::string(s));
}

/// Factor turning lambda (at unit side) into the scale-invariant quantity.
inline double scale_factor(double alpha, Scaling s) {
  auto f = scale_functionals(IsoscelesAperture(alpha, 1.0));
  switch (s) {
    case Scaling::side: return 1.0;
    case Scaling::diameter: return f.diameter * f.diameter;
    case Scaling::perimeter: return f.perimeter * f.perimeter;
    case Scaling::area: return f.area;
  }
  return 1.0;
}

enum class Curve { lambda1, lambda_a, lambda_s };

inline const char* to_string(Curve c) {
  switch (c) {
    case Curve::lambda1: return "lambda1";
    case Curve::lambda_a: return "lambda_a";
    case Curve::lambda_s: return "lambda_s";
  }
  return "lambda1";
}

inline Curve parse_curve(std::string_view s) {
  if (s == "lambda1") return Curve::lambda1;
  if (s == "lambda_a") return Curve::lambda_a;
  if (s == "lambda_s") return Curve::lambda_s;
  throw std::invalid_argument("unknown curve: " + std::string(s));
}

struct SweepRow {
  double alpha;
  double lambda1, lambda_a, lambda_s;
  double error1, error_a, error_s;

  double value(Curve c) const { return c == Curve::lambda1 ? lambda1 : c == Curve::lambda_a ? lambda_a : lambda_s; }
  double error(Curve c) const { return c == Curve::lambda1 ? error1 : c == Curve::lambda_a ? error_a : error_s; }
};

struct SweepTable {
  Scaling scaling = Scaling::side;
  int level = 0;
  std::vector<SweepRow> rows;  // alpha strictly increasing
};

/// Tones of T(alpha) with unit equal sides: lambda1 from the whole
/// triangle, lambda_a and lambda_s from the half triangle with a clamped or
/// free symmetry line. Richardson-extrapolated from levels level-1 and level.
inline SweepRow tones(double alpha, int level) {
  IsoscelesAperture t(alpha, 1.0);
  fem::Spectrum full = fem::solve_extrapolated(t.triangle(), 1, level);
  auto h = fem::half_triangle_tones(t, level);
  return {alpha, full.values[0], h.lambda_a, h.lambda_s, full.errors[0], h.error_a, h.error_s};
}

/// Exact transform of a table to another scaling.
inline SweepTable rescale(const SweepTable& table, Scaling to) {
  SweepTable out{to, table.level, {}};
  out.rows.reserve(table.rows.size());
  for (auto r : table.rows) {
    double f = scale_factor(r.alpha, to) / scale_factor(r.alpha, table.scaling);
    r.lambda1 *= f;
    r.lambda_a *= f;
    r.lambda_s *= f;
    r.error1 *= f;
    r.error_a *= f;
    r.error_s *= f;
    out.rows.push_back(r);
  }
  return out;
}

inline SweepTable sweep(std::vector<double> alpha_grid, Scaling scaling, int level) {
  if (level < 6) throw std::invalid_argument("sweep: level must be >= 6");
  std::sort(alpha_grid.begin(), alpha_grid.end());
  alpha_grid.erase(std::unique(alpha_grid.begin(), alpha_grid.end()), alpha_grid.end());
  SweepTable side{Scaling::side, level, {}};
  for (double a : alpha_grid) {
    if (!(a > 0.0 && a < pi)) throw std::invalid_argument("sweep: aperture outside (0, pi)");
    side.rows.push_back(tones(a, level));
  }
  return scaling == Scaling::side ? side : rescale(side, scaling);
}

inline std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
  return g;
}

/// Adds points at spacing/factor on both grid intervals adjacent to each
/// center (the nearest grid point to it).
inline std::vector<double> refine_grid(std::vector<double> grid, const std::vector<double>& centers, int factor = 4) {
  std::sort(grid.begin(), grid.end());
  std::vector<double> extra;
  for (double c : centers) {
    auto it = std::min_element(grid.begin(), grid.end(), [c](double a, double b) { return std::abs(a - c) < std::abs(b - c); });
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    for (std::size_t j : {i - 1, i}) {
      if (i == 0 && j == i - 1) continue;
      if (j + 1 >= grid.size()) continue;
      for (int s = 1; s < factor; ++s) extra.push_back(grid[j] + (grid[j + 1] - grid[j]) * s / factor);
    }
  }
  grid.insert(grid.end(), extra.begin(), extra.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             grid.end());
  return grid;
}

/// 61 uniform points on [pi/6, 2pi/3], refined x4 next to pi/3.
inline std::vector<double> default_grid(int points = 61) {
  return refine_grid(uniform_grid(pi / 6.0, 2.0 * pi / 3.0, points), {pi / 3.0});
}

struct Minimum {
  double alpha;
  double value;
};

/// Vertex of the parabola through the discrete minimum and its neighbours.
inline Minimum find_min(const SweepTable& table, Curve which) {
  const auto& rows = table.rows;
  if (rows.size() < 3) throw std::invalid_argument("find_min: need at least three rows");
  std::size_t i = 0;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].value(which) < rows[i].value(which)) i = k;
  if (i == 0 || i + 1 == rows.size()) throw std::domain_error("find_min: minimum at the grid edge");
  double x0 = rows[i - 1].alpha, x1 = rows[i].alpha, x2 = rows[i + 1].alpha;
  double y0 = rows[i - 1].value(which), y1 = rows[i].value(which), y2 = rows[i + 1].value(which);
  // Newton divided differences of the interpolating parabola.
  double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
  double c2 = (d12 - d01) / (x2 - x0);
  if (!(c2 > 0.0)) return {x1, y1};
  double xv = 0.5 * (x0 + x1) - d01 / (2.0 * c2);
  double yv = y0 + d01 * (xv - x0) + c2 * (xv - x0) * (xv - x1);
  return {xv, yv};
}

/// Base sweep plus x4 refinement around pi/3 and around the minimum of each
/// curve under each scaling. Returned at side scaling.
inline SweepTable sweep_refined(const std::vector<double>& base_grid, int level) {
  SweepTable table = sweep(base_grid, Scaling::side, level);
  std::vector<double> centers{pi / 3.0};
  for (Scaling s : {Scaling::side, Scaling::diameter, Scaling::perimeter, Scaling::area}) {
    SweepTable t = rescale(table, s);
    for (Curve c : {Curve::lambda1, Curve::lambda_a, Curve::lambda_s}) {
      try {
        centers.push_back(find_min(t, c).alpha);
      } catch (const std::domain_error&) {
      }
    }
  }
  std::vector<double> base;
  for (const auto& r : table.rows) base.push_back(r.alpha);
  std::vector<double> fine = refine_grid(base, centers);
  for (double a : fine) {
    bool have = std::any_of(table.rows.begin(), table.rows.end(), [a](const SweepRow& r) { return std::abs(r.alpha - a) < 1e-12; });
    if (!have) table.rows.push_back(tones(a, level));
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.alpha < b.alpha; });
  return table;
}

/// Value of the curve at a grid aperture (within 1e-9), or throws.
inline const SweepRow& row_at(const SweepTable& table, double alpha) {
  for (const auto& r : table.rows)
    if (std::abs(r.alpha - alpha) < 1e-9) return r;
  throw std::out_of_range("no sweep row at alpha = " + std::to_string(alpha));
}

struct MonotoneClaim {
  std::string name;
  Curve curve;
  Scaling scaling;
  double lo, hi;   // closed aperture interval
  bool increasing;
  bool strict;

  bool covers(const SweepRow& p, const SweepRow& q) const { return p.alpha >= lo - 1e-9 && q.alpha <= hi + 1e-9; }

  /// Verdict and margin of one successive difference at the claim's scaling.
  /// A step passes when its sign matches by more than three error estimates;
  /// a strict claim inside the error band is inconclusive, a non-strict one
  /// passes unless the step is clearly wrong.
  std::pair<Verdict, double> step(const SweepRow& p, const SweepRow& q) const {
    double diff = q.value(curve) - p.value(curve);
    double signed_diff = increasing ? diff : -diff;
    double err = 3.0 * (p.error(curve) + q.error(curve));
    if (signed_diff < -err) return {Verdict::fail, signed_diff - err};
    if (strict && signed_diff <= err) return {Verdict::inconclusive, signed_diff - err};
    return {Verdict::pass, signed_diff - err};
  }
};

/// Interval monotonicity claims for the fundamental and antisymmetric tones.
inline std::vector<MonotoneClaim> monotonicity_claims() {
  const double a3 = pi / 3.0, a2 = pi / 2.0;
  return {
      {"lambda1 l^2 decreasing on (0, pi/3]", Curve::lambda1, Scaling::side, 0.0, a3, false, true},
      {"lambda1 l^2 increasing on [pi/2, pi)", Curve::lambda1, Scaling::side, a2, pi, true, true},
      {"lambda1 D^2 decreasing on (0, pi/3]", Curve::lambda1, Scaling::diameter, 0.0, a3, false, true},
      {"lambda1 D^2 increasing on [pi/3, pi)", Curve::lambda1, Scaling::diameter, a3, pi, true, true},
      {"lambda1 L^2 decreasing on (0, pi/3]", Curve::lambda1, Scaling::perimeter, 0.0, a3, false, true},
      {"lambda1 L^2 increasing on [pi/3, pi)", Curve::lambda1, Scaling::perimeter, a3, pi, true, true},
      {"lambda1 A decreasing on (0, pi/3]", Curve::lambda1, Scaling::area, 0.0, a3, false, false},
      {"lambda1 A increasing on [pi/3, pi)", Curve::lambda1, Scaling::area, a3, pi, true, false},
      {"lambda_a l^2 decreasing on (0, pi/2]", Curve::lambda_a, Scaling::side, 0.0, a2, false, true},
      {"lambda_a l^2 increasing on [pi/2, pi)", Curve::lambda_a, Scaling::side, a2, pi, true, true},
      {"lambda_a A decreasing on (0, pi/2]", Curve::lambda_a, Scaling::area, 0.0, a2, false, false},
      {"lambda_a A increasing on [pi/2, pi)", Curve::lambda_a, Scaling::area, a2, pi, true, false},
      {"lambda_a D^2 decreasing on (0, pi/3]", Curve::lambda_a, Scaling::diameter, 0.0, a3, false, true},
      {"lambda_a D^2 increasing on [pi/3, pi)", Curve::lambda_a, Scaling::diameter, a3, pi, true, true},
  };
}

inline double max_spacing(const SweepTable& table) {
  double s = 0.0;
  for (std::size_t i = 1; i < table.rows.size(); ++i) s = std::max(s, table.rows[i].alpha - table.rows[i - 1].alpha);
  return s;
}

/// Re-solves, one level finer each round, the rows bounding strict-claim steps
/// that the error estimates cannot resolve, up to max_level. Near a stationary
/// endpoint the true step is O(h^2) and needs the sharper estimates. Returns
/// the number of row solves performed.
inline int sharpen_unresolved(SweepTable& table, int max_level) {
  std::vector<int> level(table.rows.size(), table.level);
  int solves = 0;
  for (;;) {
    SweepTable side = rescale(table, Scaling::side);
    std::vector<bool> mark(table.rows.size(), false);
    for (const auto& claim : monotonicity_claims()) {
      if (!claim.strict) continue;
      SweepTable t = rescale(side, claim.scaling);
      for (std::size_t i = 1; i < t.rows.size(); ++i) {
        if (!claim.covers(t.rows[i - 1], t.rows[i])) continue;
        if (claim.step(t.rows[i - 1], t.rows[i]).first != Verdict::inconclusive) continue;
        for (std::size_t k : {i - 1, i})
          if (level[k] < max_level) mark[k] = true;
      }
    }
    if (std::none_of(mark.begin(), mark.end(), [](bool b) { return b; })) return solves;
    for (std::size_t k = 0; k < mark.size(); ++k) {
      if (!mark[k]) continue;
      ++level[k];
      SweepTable one{Scaling::side, level[k], {tones(table.rows[k].alpha, level[k])}};
      table.rows[k] = rescale(one, table.scaling).rows[0];
      ++solves;
    }
  }
}

/// Successive-difference checks of every monotonicity claim, the mirror
/// identity lambda_a(alpha) A = lambda_a(pi - alpha) A, and the corner of
/// lambda1 D^2 at pi/3. The table may be at any scaling.
inline Report verify_monotonicity(const SweepTable& any_table, double max_step = 0.02) {
  Report r;
  r.claim = "interval monotonicity of lambda1 and lambda_a under side/diameter/perimeter/area scaling";
  SweepTable side = rescale(any_table, Scaling::side);
  double spacing = max_spacing(side);
  r.add(exact_check("grid spacing <= " + std::to_string(max_step), spacing, max_step, spacing <= max_step + 1e-12));
  for (const auto& claim : monotonicity_claims()) {
    SweepTable t = rescale(side, claim.scaling);
    int steps = 0;
    Verdict v = Verdict::pass;
    double worst_margin = 1e300;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      if (!claim.covers(t.rows[i - 1], t.rows[i])) continue;
      ++steps;
      auto [step, margin] = claim.step(t.rows[i - 1], t.rows[i]);
      worst_margin = std::min(worst_margin, margin);
      v = worst(v, step);
    }
    Check c{claim.name, static_cast<double>(steps), 0.0, worst_margin, steps > 0 ? v : Verdict::inconclusive,
            std::to_string(steps) + " steps checked"};
    r.add(c);
  }

  const double eps = 1e-9;
  // Mirror pairs alpha <-> pi - alpha for the antisymmetric tone at area scaling.
  SweepTable area = rescale(side, Scaling::area);
  int pairs = 0;
  double worst_rel = 0.0;
  for (const auto& p : area.rows) {
    if (p.alpha >= pi / 2.0 - eps) continue;
    for (const auto& q : area.rows)
      if (std::abs(q.alpha - (pi - p.alpha)) < 1e-9) {
        ++pairs;
        worst_rel = std::max(worst_rel, std::abs(p.lambda_a - q.lambda_a) / q.lambda_a);
      }
  }
  r.add(exact_check("mirror identity lambda_a A within 0.5% (" + std::to_string(pairs) + " pairs)", worst_rel, 0.005,
                    pairs > 0 && worst_rel < 0.005));

  // Corner of lambda1 D^2 at pi/3 from one-sided difference quotients.
  SweepTable diam = rescale(side, Scaling::diameter);
  auto& rows = diam.rows;
  auto mid = std::find_if(rows.begin(), rows.end(), [](const SweepRow& x) { return std::abs(x.alpha - pi / 3.0) < 1e-9; });
  if (mid != rows.end() && mid - rows.begin() >= 2 && rows.end() - mid >= 3) {
    auto slope = [](const SweepRow& a, const SweepRow& b) { return (b.lambda1 - a.lambda1) / (b.alpha - a.alpha); };
    double left1 = slope(*(mid - 1), *mid), left2 = slope(*(mid - 2), *mid);
    double right1 = slope(*mid, *(mid + 1)), right2 = slope(*mid, *(mid + 2));
    double h = (mid + 1)->alpha - mid->alpha;
    double est = std::abs(left1 - left2) + std::abs(right1 - right2) + 2.0 * (mid->error1 + (mid + 1)->error1) / h;
    r.add(exact_check("lambda1 D^2 corner at pi/3: slope jump > 10x estimation error", right1 - left1, 10.0 * est,
                      right1 - left1 > 10.0 * est));
    r.note("corner_left_slope", left1);
    r.note("corner_right_slope", right1);
  } else {
    r.add({"lambda1 D^2 corner at pi/3", 0, 0, 0, Verdict::inconclusive, "grid does not bracket pi/3"});
  }
  r.note("max_spacing", spacing);
  return r;
}

/// Right triangle with hypotenuse 1 and smallest angle alpha.
inline Triangle right_triangle(double alpha) {
  return {{0.0, 0.0}, {std::cos(alpha), 0.0}, {0.0, std::sin(alpha)}};
}

/// lambda1 A over right triangles with smallest angle on a grid in
/// (0.15, pi/4]; checks it is non-increasing, and the two exact endpoints.
inline Report verify_right_family(int level = 7, int points = 16) {
  Report r;
  r.claim = "lambda1 A of the right triangle with smallest angle alpha is decreasing on (0, pi/4]";
  std::vector<double> grid = uniform_grid(0.15, pi / 4.0, points);
  grid.push_back(pi / 6.0);
  std::sort(grid.begin(), grid.end());
  double prev = 0.0, prev_err = 0.0;
  Verdict v = Verdict::pass;
  double worst_margin = 1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Triangle t = right_triangle(grid[i]);
    auto s = fem::solve_extrapolated(t, 1, level);
    double val = s.values[0] * t.area(), err = s.errors[0] * t.area();
    r.note("lambda1A@" + std::to_string(grid[i]), val);
    if (i > 0) {
      double drop = prev - val;  // should be >= 0
      double tol = 3.0 * (err + prev_err);
      worst_margin = std::min(worst_margin, drop + tol);
      if (drop < -tol) v = Verdict::fail;
    }
    if (std::abs(grid[i] - pi / 4.0) < 1e-12) {
      double exact = 2.5 * pi * pi;  // half square: 5 pi^2 / s^2 times s^2 / 2
      r.add(exact_check("alpha = pi/4 matches half-square 5pi^2/2 within 0.1%", val, exact,
                        std::abs(val - exact) < 1e-3 * exact));
    }
    if (std::abs(grid[i] - pi / 6.0) < 1e-12) {
      double exact = 14.0 * sqrt3 * pi * pi / 9.0;  // 7 (16 pi^2/9) times area sqrt3/8
      r.add(exact_check("alpha = pi/6 matches half-equilateral 14 sqrt3 pi^2/9 within 0.1%", val, exact,
                        std::abs(val - exact) < 1e-3 * exact));
    }
    prev = val;
    prev_err = err;
  }
  r.add({"non-increasing over grid", 0.0, 0.0, worst_margin, v, std::to_string(grid.size()) + " points"});
  return r;
}

/// Second mode symmetric below pi/3 and antisymmetric above it.
inline Report observation_crossing(const SweepTable& table) {
  Report r;
  r.claim = "second mode symmetric for alpha < pi/3, antisymmetric for alpha > pi/3";
  const double eps = 1e-9;
  bool below = false, above = false;
  int sym_ok = 0, sym_bad = 0, anti_ok = 0, anti_bad = 0;
  double crossing = std::nan("");
  const SweepRow* prev = nullptr;
  for (const auto& row : table.rows) {
    double gap = row.lambda_a - row.lambda_s;  // > 0 when symmetric wins
    if (row.alpha < pi / 3.0 - eps) {
      below = true;
      (gap > 0 ? sym_ok : sym_bad)++;
    } else if (row.alpha > pi / 3.0 + eps) {
      above = true;
      (gap < 0 ? anti_ok : anti_bad)++;
    }
    if (prev) {
      double g0 = prev->lambda_a - prev->lambda_s;
      if ((g0 > 0 && gap <= 0) || (g0 >= 0 && gap < 0))
        crossing = prev->alpha + (row.alpha - prev->alpha) * g0 / (g0 - gap);
    }
    prev = &row;
  }
  r.add(exact_check("lambda_s < lambda_a for all alpha < pi/3", sym_ok, sym_ok + sym_bad, below && sym_bad == 0));
  r.add(exact_check("lambda_a < lambda_s for all alpha > pi/3", anti_ok, anti_ok + anti_bad, above && anti_bad == 0));
  double resolution = max_spacing(table);
  r.add(exact_check("crossing at pi/3 within grid resolution", crossing, pi / 3.0,
                    std::abs(crossing - pi / 3.0) <= resolution));
  r.note("crossing_alpha", crossing);
  return r;
}

}  // namespace trispec::isosceles
