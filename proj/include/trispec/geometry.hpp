#pragma once

// Planar triangles, their scale functionals, and the classical closed-form
// eigenvalue bounds (Polya, Polya-Szego, Makai) used to bracket the
// fundamental tone.

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "trispec/report.hpp"

namespace trispec {

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt3 = std::numbers::sqrt3;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point, Point) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

class degenerate_triangle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Three planar vertices. Every functional below is invariant under vertex
/// permutation and rigid motion.
struct Triangle {
  std::array<Point, 3> v{};

  Triangle() = default;
  Triangle(Point a, Point b, Point c) : v{a, b, c} {}

  double signed_area() const { return 0.5 * cross(v[1] - v[0], v[2] - v[0]); }
  double area() const { return std::abs(signed_area()); }

  /// side(i) is the edge opposite vertex i.
  double side(int i) const { return distance(v[(i + 1) % 3], v[(i + 2) % 3]); }
  std::array<double, 3> sides() const { return {side(0), side(1), side(2)}; }
  double perimeter() const { return side(0) + side(1) + side(2); }

  double max_side() const {
    auto s = sides();
    return std::max({s[0], s[1], s[2]});
  }

  /// |signed area| < 1e-14 * diameter^2 counts as degenerate (scale free).
  bool degenerate() const {
    double d = max_side();
    return !(d > 0.0) || !(std::abs(signed_area()) >= 1e-14 * d * d);
  }

  void require_nondegenerate() const {
    if (degenerate()) throw degenerate_triangle("degenerate triangle");
  }

  /// Same triangle with counter-clockwise orientation.
  Triangle ccw() const { return signed_area() < 0 ? Triangle{v[0], v[2], v[1]} : *this; }

  bool contains(Point p, double tol = 1e-12) const {
    Triangle t = ccw();
    double scale = t.max_side();
    for (int i = 0; i < 3; ++i) {
      Point e = t.v[(i + 1) % 3] - t.v[i];
      if (cross(e, p - t.v[i]) < -tol * scale * norm(e)) return false;
    }
    return true;
  }
};

inline double diameter(const Triangle& t) {
  t.require_nondegenerate();
  return t.max_side();
}

/// T(a,b): vertices (-1,0), (1,0), (a,b) with b > 0.
struct FanTriangle {
  double a = 0.0;
  double b = sqrt3;

  FanTriangle() = default;
  FanTriangle(double a_, double b_) : a(a_), b(b_) {
    if (!(b_ > 0.0)) throw std::invalid_argument("FanTriangle: b must be positive");
  }

  Triangle triangle() const { return {{-1.0, 0.0}, {1.0, 0.0}, {a, b}}; }
  double diameter() const { return trispec::diameter(triangle()); }
  bool subequilateral() const { return a == 0.0 && b > sqrt3; }
};

/// Isosceles triangle with aperture alpha between two equal sides of length l.
struct IsoscelesAperture {
  double alpha = pi / 3.0;
  double l = 1.0;

  IsoscelesAperture() = default;
  IsoscelesAperture(double alpha_, double l_ = 1.0) : alpha(alpha_), l(l_) {
    if (!(alpha_ > 0.0 && alpha_ < pi)) throw std::invalid_argument("aperture must lie in (0, pi)");
    if (!(l_ > 0.0)) throw std::invalid_argument("side length must be positive");
  }

  /// Apex at the origin, symmetric about the positive x-axis.
  Triangle triangle() const {
    double c = l * std::cos(alpha / 2), s = l * std::sin(alpha / 2);
    return {{0.0, 0.0}, {c, -s}, {c, s}};
  }

  /// Upper half: apex, foot of the symmetry line, upper base vertex.
  /// Edge 0 -> 1 of this triangle lies on the symmetry line.
  Triangle half_triangle() const {
    double c = l * std::cos(alpha / 2), s = l * std::sin(alpha / 2);
    return {{0.0, 0.0}, {c, 0.0}, {c, s}};
  }
};

struct ScaleFunctionals {
  double area;
  double perimeter;
  double diameter;
};

inline ScaleFunctionals scale_functionals(const IsoscelesAperture& t) {
  double area = 0.5 * t.l * t.l * std::sin(t.alpha);
  double perimeter = 2.0 * t.l * (1.0 + std::sin(t.alpha / 2));
  double diam = t.alpha <= pi / 3.0 ? t.l : 2.0 * t.l * std::sin(t.alpha / 2);
  return {area, perimeter, diam};
}

/// Linear map fixing (-1,0) and (1,0) and taking (c,d) to (a,b); it carries
/// T(c,d) onto T(a,b).
class TauMap {
 public:
  TauMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    if (!(d > 0.0) || !(b > 0.0)) throw std::invalid_argument("tau map needs b, d > 0");
  }

  Point operator()(Point p) const { return {p.x + (a_ - c_) / d_ * p.y, b_ / d_ * p.y}; }

  Point inverse(Point q) const {
    double y = d_ / b_ * q.y;
    return {q.x - (a_ - c_) / d_ * y, y};
  }

  Triangle operator()(const Triangle& t) const { return {(*this)(t.v[0]), (*this)(t.v[1]), (*this)(t.v[2])}; }

  /// Row-major 2x2 matrix of the map.
  std::array<double, 4> matrix() const { return {1.0, (a_ - c_) / d_, 0.0, b_ / d_}; }

 private:
  double a_, b_, c_, d_;
};

inline TauMap tau_map(double a, double b, double c, double d) { return TauMap(a, b, c, d); }

/// Result of extending the second-longest side to the length of the longest.
struct SubequilateralHull {
  FanTriangle fan;   // normalized T(0,b) with diameter sqrt(1+b^2)
  Triangle placed;   // the same isosceles triangle, in the input's coordinates
  double beta;       // angle between the two longest sides
};

inline SubequilateralHull subequilateral_hull_placed(const Triangle& t) {
  t.require_nondegenerate();
  // Vertex opposite the shortest side is where the two longest sides meet.
  // Ties on the shortest side keep the lowest index; any choice gives the
  // same angle.
  auto s = t.sides();
  int apex = 0;
  for (int i = 1; i < 3; ++i)
    if (s[i] < s[apex]) apex = i;
  Point p = t.v[apex];
  Point q = t.v[(apex + 1) % 3];
  Point r = t.v[(apex + 2) % 3];
  double lq = distance(p, q), lr = distance(p, r);
  if (lq < lr) {
    std::swap(q, r);
    std::swap(lq, lr);
  }
  // q ends the longest side; stretch p->r to the same length.
  Point r_ext = p + (lq / lr) * (r - p);
  double beta = std::acos(std::clamp(dot(q - p, r - p) / (lq * lr), -1.0, 1.0));
  double b = 1.0 / std::tan(beta / 2);
  return {FanTriangle(0.0, b), Triangle{p, q, r_ext}, beta};
}

inline FanTriangle subequilateral_hull(const Triangle& t) { return subequilateral_hull_placed(t).fan; }

/// Polya's upper bound pi^2/3 * (l1^2 + l2^2 + l3^2) / A^2 for lambda_1.
inline double polya_upper(const Triangle& t) {
  t.require_nondegenerate();
  auto s = t.sides();
  double a = t.area();
  return pi * pi / 3.0 * (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) / (a * a);
}

struct ClassicalLower {
  double polya_szego;  // lambda_1 A >= 4 pi^2 / sqrt 3
  double makai;        // lambda_1 A^2 / L^2 >= pi^2 / 16
};

inline ClassicalLower classical_lower(const Triangle& t) {
  t.require_nondegenerate();
  double a = t.area(), l = t.perimeter();
  return {4.0 * pi * pi / (sqrt3 * a), pi * pi * l * l / (16.0 * a * a)};
}

/// Dirichlet eigenvalue with mode (p,q) of the cos(phi) x sin(phi) rectangle
/// (diameter 1).
inline double rectangle_eigen(double phi, int p, int q) {
  if (!(phi > 0.0 && phi <= pi / 4.0)) throw std::invalid_argument("rectangle angle must lie in (0, pi/4]");
  if (p < 1 || q < 1) throw std::invalid_argument("rectangle mode indices must be positive");
  double sec = 1.0 / std::cos(phi), csc = 1.0 / std::sin(phi);
  return pi * pi * (p * p * sec * sec + q * q * csc * csc);
}

struct RectangleMinimum {
  double phi;
  double value;
};

/// Minimizer over phi in (0, pi/4] of lambda_2 (mode (2,1)) or, with
/// `sum`, of lambda_1 + lambda_2, for the cos(phi) x sin(phi) rectangle.
inline RectangleMinimum rectangle_minimize(bool sum) {
  auto f = [sum](double phi) {
    double l2 = rectangle_eigen(phi, 2, 1);
    return sum ? l2 + rectangle_eigen(phi, 1, 1) : l2;
  };
  auto [x, y] = boost::math::tools::brent_find_minima(f, 0.05, pi / 4.0, std::numeric_limits<double>::digits / 2);
  return {x, y};
}

/// The square does not minimize lambda_2 or lambda_1 + lambda_2 among
/// rectangles of unit diameter.
inline Report verify_rectangle() {
  Report r;
  r.claim = "among unit-diameter rectangles, lambda_2 and lambda_1 + lambda_2 are minimal for some phi < pi/4";
  auto m2 = rectangle_minimize(false);
  auto ms = rectangle_minimize(true);
  const double phi2 = std::atan(1.0 / std::sqrt(2.0)), phis = std::atan(std::pow(0.4, 0.25));
  r.add(exact_check("argmin lambda_2 < pi/4", pi / 4.0, m2.phi, m2.phi < pi / 4.0 - 1e-6));
  r.add(exact_check("argmin lambda_2 matches arctan(2^-1/2)", m2.phi, phi2, std::abs(m2.phi - phi2) < 1e-6));
  r.add(exact_check("lambda_2 at argmin below the square", rectangle_eigen(pi / 4.0, 2, 1), m2.value,
                    m2.value < rectangle_eigen(pi / 4.0, 2, 1)));
  r.add(exact_check("argmin lambda_1 + lambda_2 < pi/4", pi / 4.0, ms.phi, ms.phi < pi / 4.0 - 1e-6));
  r.add(exact_check("argmin lambda_1 + lambda_2 matches arctan((2/5)^1/4)", ms.phi, phis, std::abs(ms.phi - phis) < 1e-6));
  r.note("phi_lambda2", m2.phi);
  r.note("min_lambda2", m2.value);
  r.note("phi_sum", ms.phi);
  r.note("min_sum", ms.value);
  return r;
}

}  // namespace trispec
