#pragma once

// Certified eigenvalue enclosures from approximate Helmholtz solutions.
//
// If -Lap u = lambda_bar u in Omega and u is small on the boundary, some
// Dirichlet eigenvalue lies in [lambda_bar/(1+eps), lambda_bar/(1-eps)] with
// eps = sqrt(area) ||u||_inf(boundary) / ||u||_L2(Omega). The trial functions
// here are sums of sector modes J_{k nu}(kappa r) cos(k nu theta).

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "trispec/fem.hpp"
#include "trispec/geometry.hpp"
#include "trispec/report.hpp"
#include "trispec/transplant.hpp"

namespace trispec::certify {

class certification_failed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Ascending power series; used for x <= 12 where cancellation stays mild.
inline double bessel_series(double nu, double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > half) break;
  }
  return sum;
}

/// Miller's backward recurrence from a high order down to nu0 = frac(nu),
/// normalized by
///   (x/2)^nu0 / Gamma(nu0+1) = J_nu0 + sum_{m>=1} (nu0+2m) g_m J_{nu0+2m},
///   g_1 = 1, g_m = g_{m-1} (nu0+m-1)/m.
inline double bessel_miller(double nu, double x) {
  const int target = static_cast<int>(std::floor(nu));
  const double nu0 = nu - target;
  const double top_scale = std::max({nu, x, 1.0});
  int start = static_cast<int>(std::ceil(top_scale + 20.0 + std::sqrt(200.0 * top_scale)));
  if (start % 2) ++start;

  std::vector<double> g(start / 2 + 2, 0.0);
  g[1] = 1.0;
  for (int m = 2; m < static_cast<int>(g.size()); ++m) g[m] = g[m - 1] * (nu0 + m - 1) / m;

  double f_next = 0.0;   // f_{k+1}
  double f = 1e-300;     // f_k
  double sum = 0.0;
  double at_target = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k == target) at_target = f;
    if (k % 2 == 0) sum += k == 0 ? f : (nu0 + k) * g[k / 2] * f;
    if (k == 0) break;
    double f_prev = 2.0 * (nu0 + k) / x * f - f_next;
    f_next = f;
    f = f_prev;
    if (std::abs(f) > 1e250) {
      f *= 1e-250;
      f_next *= 1e-250;
      sum *= 1e-250;
      at_target *= 1e-250;
    }
  }
  double norm = std::exp(nu0 * std::log(0.5 * x) - std::lgamma(nu0 + 1.0));
  return at_target * (norm / sum);
}

inline double bessel_j_unchecked(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  return x <= 12.0 ? bessel_series(nu, x) : bessel_miller(nu, x);
}

}  // namespace detail

/// Bessel function of the first kind for 0 <= nu <= 50, 0 <= x <= 100.
inline double bessel_j(double nu, double x) {
  if (!(nu >= 0.0 && nu <= 50.0)) throw std::domain_error("bessel_j: order outside [0, 50]");
  if (!(x >= 0.0 && x <= 100.0)) throw std::domain_error("bessel_j: argument outside [0, 100]");
  return detail::bessel_j_unchecked(nu, x);
}

/// k-th positive zero of J_nu, for nu <= 50 and k <= 20. Zeros are
/// bracketed by a sign-change scan starting at nu (no positive zero lies
/// below it), then refined by bisection and a Newton polish.
inline double bessel_zero(double nu, int k) {
  if (!(nu >= 0.0 && nu <= 50.0)) throw std::domain_error("bessel_zero: order outside [0, 50]");
  if (k < 1 || k > 20) throw std::domain_error("bessel_zero: index outside [1, 20]");
  auto J = [nu](double x) { return detail::bessel_j_unchecked(nu, x); };

  const double step = 0.125;
  double lo = std::max(nu, step);
  double flo = J(lo);
  int found = 0;
  for (int i = 0; i < 4000; ++i) {
    double hi = lo + step;
    double fhi = J(hi);
    if (flo == 0.0 || (flo < 0) != (fhi < 0)) {
      if (++found == k) {
        double a = lo, b = hi, fa = flo;
        for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it) {
          double m = 0.5 * (a + b);
          double fm = J(m);
          if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
          }
        }
        double z = 0.5 * (a + b);
        for (int it = 0; it < 3; ++it) {
          double d = nu / z * J(z) - detail::bessel_j_unchecked(nu + 1.0, z);  // J'_nu
          if (d == 0.0) break;
          double zn = z - J(z) / d;
          if (!(zn > lo && zn < hi)) break;
          z = zn;
        }
        return z;
      }
    }
    lo = hi;
    flo = fhi;
  }
  throw certification_failed("bessel_zero: failed to bracket zero " + std::to_string(k) + " of J_" + std::to_string(nu));
}

/// Circular sector of given radius and aperture; modes cos(k nu theta) with
/// nu = pi / aperture.
struct SectorSpec {
  double radius = 1.0;
  double aperture = pi / 2.0;

  SectorSpec() = default;
  SectorSpec(double radius_, double aperture_) : radius(radius_), aperture(aperture_) {
    if (!(radius_ > 0.0)) throw std::invalid_argument("sector radius must be positive");
    if (!(aperture_ > 0.0 && aperture_ < pi)) throw std::invalid_argument("sector aperture must lie in (0, pi)");
  }
  double order() const { return pi / aperture; }
};

/// Dirichlet eigenvalue (j_{k nu, j} / radius)^2.
inline double sector_eigenvalue(const SectorSpec& s, int angular, int radial) {
  if (angular < 1 || radial < 1) throw std::invalid_argument("sector mode indices must be positive");
  double z = bessel_zero(angular * s.order(), radial);
  return z * z / (s.radius * s.radius);
}

struct TrialTerm {
  double coefficient;
  int multiple;  // odd; the term is J_{multiple nu}(kappa r) cos(multiple nu theta)
};

struct TrialFunction {
  std::vector<TrialTerm> terms;
  double nu = 1.0;
  double kappa = 1.0;

  double lambda_bar() const { return kappa * kappa; }
};

inline double trial_eval(const TrialFunction& tf, double r, double theta) {
  if (!(r >= 0.0)) throw std::domain_error("trial_eval: r must be nonnegative");
  double s = 0.0;
  for (const auto& t : tf.terms) {
    double order = t.multiple * tf.nu;
    s += t.coefficient * detail::bessel_j_unchecked(order, tf.kappa * r) * std::cos(order * theta);
  }
  return s;
}

/// Sector-mode combination used for the triangle T(0,h) placed with its apex
/// at the origin: J_nu + (5/22) J_3nu - (2225/53) J_5nu at kappa = 334/75.
inline TrialFunction lemma62_trial(double h = 2.5, double kappa = 334.0 / 75.0) {
  double aperture = 2.0 * std::atan(1.0 / h);
  return {{{1.0, 1}, {5.0 / 22.0, 3}, {-2225.0 / 53.0, 5}}, pi / aperture, kappa};
}

struct L2Estimate {
  double value;       // ||u||_L2 at the higher order, minus the order-doubling change
  double raw;         // ||u||_L2 at the higher order
  double change;      // |difference| between the two orders
  int order_low;
  int order_high;
};

/// L2 norm of the trial function over the sector {r < radius, |theta| <
/// aperture/2}, tensor Gauss-Legendre in (r, theta) at orders 32 and 64.
inline L2Estimate l2_lower(const TrialFunction& tf, const SectorSpec& s) {
  auto integrate = [&](auto rule) {
    const double half = s.aperture / 2.0;
    double sq = decltype(rule)::integrate(
        [&](double r) {
          return r * decltype(rule)::integrate(
                         [&](double th) {
                           double u = trial_eval(tf, r, th);
                           return u * u;
                         },
                         -half, half);
        },
        0.0, s.radius);
    return std::sqrt(sq);
  };
  double lo = integrate(boost::math::quadrature::gauss<double, 32>{});
  double hi = integrate(boost::math::quadrature::gauss<double, 64>{});
  double change = std::abs(hi - lo);
  if (!(change < 1e-6 * hi)) throw certification_failed("L2 quadrature did not converge under order doubling");
  return {hi - change, hi, change, 32, 64};
}

struct SupEstimate {
  double value;        // safeguarded upper estimate
  double sampled_max;  // max over samples
  double slope_bound;  // 1.5 x largest sampled |du/dtheta|
  double spacing;
  std::size_t samples;
  bool heuristic = true;
};

/// Sup of |u| on the side r = h / cos(theta), |theta| <= aperture/2, by
/// dense sampling plus a first-order Lipschitz allowance. Not rigorous.
inline SupEstimate boundary_sup(const TrialFunction& tf, double h, double aperture, std::size_t samples = 200000) {
  if (!(h > 0.0)) throw std::domain_error("boundary_sup: h must be positive");
  if (samples < 2) throw std::invalid_argument("boundary_sup: need at least two samples");
  const double half = aperture / 2.0;
  const double dt = aperture / static_cast<double>(samples - 1);
  double best = 0.0, slope = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    double th = -half + dt * static_cast<double>(i);
    double u = trial_eval(tf, h / std::cos(th), th);
    best = std::max(best, std::abs(u));
    if (i > 0) slope = std::max(slope, std::abs(u - prev) / dt);
    prev = u;
  }
  double bound = 1.5 * slope;
  return {best + dt * bound, best, bound, dt, samples, true};
}

struct CertifiedInterval {
  double lambda_bar;
  double epsilon;
  double lower;
  double upper;
};

inline CertifiedInterval moler_payne(double lambda_bar, double sup_bound, double l2_bound, double area) {
  if (!(l2_bound > 0.0) || !(area > 0.0) || !(sup_bound >= 0.0))
    throw std::invalid_argument("moler_payne: bounds and area must be positive");
  double eps = std::sqrt(area) * sup_bound / l2_bound;
  if (!(eps < 1.0)) throw certification_failed("boundary error too large: eps = " + std::to_string(eps));
  return {lambda_bar, eps, lambda_bar / (1.0 + eps), lambda_bar / (1.0 - eps)};
}

/// Every ingredient of the enclosure of lambda_2 on T(0,h).
struct Lemma62Data {
  double h;
  double aperture;
  double nu;
  TrialFunction trial;
  L2Estimate l2;
  SupEstimate sup;
  CertifiedInterval interval;
  double target;            // Ctilde(h) Lambda_2(E) - 4 pi^2/(sqrt3 h)
  double third_sector;      // j_{2nu,1}^2 / (1 + h^2)
  double second_sector;     // j_{nu,2}^2 / h^2 (sector of radius h)
  double polya_szego_l1;    // 4 pi^2 / (sqrt3 h)
  double polya_upper_l1;    // 2 pi^2 (h^2+3) / (3 h^2)
};

inline Lemma62Data lemma62_data(double h = 2.5, double kappa = 334.0 / 75.0) {
  Lemma62Data d{};
  d.h = h;
  d.aperture = 2.0 * std::atan(1.0 / h);
  d.nu = pi / d.aperture;
  d.trial = lemma62_trial(h, kappa);
  d.l2 = l2_lower(d.trial, SectorSpec(h, d.aperture));
  d.sup = boundary_sup(d.trial, h, d.aperture);
  // T(0,h) has area h.
  d.interval = moler_payne(d.trial.lambda_bar(), d.sup.value, d.l2.value, h);
  double equilateral_sum = 40.0 * pi * pi / 9.0;  // Lambda_2 of T(0, sqrt 3)
  d.polya_szego_l1 = 4.0 * pi * pi / (sqrt3 * h);
  d.polya_upper_l1 = 2.0 * pi * pi * (h * h + 3.0) / (3.0 * h * h);
  d.target = transplant::C_funcs(h).Ctilde * equilateral_sum - d.polya_szego_l1;
  double z = bessel_zero(2.0 * d.nu, 1);
  d.third_sector = z * z / (1.0 + h * h);
  double z2 = bessel_zero(d.nu, 2);
  d.second_sector = z2 * z2 / (h * h);
  return d;
}

/// Lambda_2(0,h) > Ctilde(h) Lambda_2(0, sqrt 3) at h = 5/2.
/// With fem_level > 0, also checks that the extrapolated FEM lambda_2 of
/// T(0,5/2) lies inside the certified interval.
inline Report lemma62_verify(double kappa = 334.0 / 75.0, int fem_level = 0) {
  Report r;
  r.claim = "Lambda_2(0,5/2) > Ctilde(5/2) Lambda_2(0,sqrt3)";
  const double h = 2.5;
  Lemma62Data d;
  try {
    d = lemma62_data(h, kappa);
  } catch (const certification_failed& e) {
    r.add({"certification", 0, 0, 0, Verdict::fail, e.what()});
    return r;
  }
  const auto& iv = d.interval;
  r.add(exact_check("eps < 1", iv.epsilon, 1.0, iv.epsilon < 1.0));
  r.add(exact_check("certified lower > 19.35 target", iv.lower, d.target, iv.lower > d.target));
  r.add(exact_check("certified upper < third sector eigenvalue", d.third_sector, iv.upper, iv.upper < d.third_sector,
                    "enclosed eigenvalue is lambda_1 or lambda_2"));
  r.add(exact_check("polya upper lambda_1 < certified lower", iv.lower, d.polya_upper_l1, d.polya_upper_l1 < iv.lower,
                    "enclosed eigenvalue is lambda_2"));
  double ct = transplant::C_funcs(h).Ctilde * 40.0 * pi * pi / 9.0;
  r.add(exact_check("lambda_1 lower + lambda_2 lower > Ctilde Lambda_2(E)", d.polya_szego_l1 + iv.lower, ct,
                    d.polya_szego_l1 + iv.lower > ct));
  if (fem_level > 0) {
    auto s = fem::solve_extrapolated(FanTriangle(0.0, h).triangle(), 2, fem_level);
    double l2 = s.values[1], err = s.errors[1];
    bool inside = l2 - 3.0 * err > iv.lower && l2 + 3.0 * err < iv.upper;
    bool outside = l2 + 3.0 * err < iv.lower || l2 - 3.0 * err > iv.upper;
    r.add({"FEM lambda_2(0,5/2) inside certified interval", l2, iv.lower, l2 - iv.lower,
           inside ? Verdict::pass : outside ? Verdict::fail : Verdict::inconclusive,
           "error estimate " + std::to_string(err)});
    r.note("fem_lambda2", l2);
  }
  r.note("lambda_bar", iv.lambda_bar);
  r.note("epsilon", iv.epsilon);
  r.note("lower", iv.lower);
  r.note("upper", iv.upper);
  r.note("l2", d.l2.value);
  r.note("sup", d.sup.value);
  r.note("target", d.target);
  r.note("third_sector", d.third_sector);
  r.note("kappa", kappa);
  r.note("sup_heuristic", "true");
  return r;
}

}  // namespace trispec::certify
