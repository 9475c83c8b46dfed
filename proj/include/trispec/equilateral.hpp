#pragma once

// Exact Dirichlet spectrum of the equilateral triangle.
//
// With unit side the eigenvalues are sigma(m,n) = (16 pi^2 / 9) q(m,n) with
// q = m^2 + mn + n^2 over m, n >= 1. Relative to a fixed symmetry line the
// modes with m > n are antisymmetric; the rest (m <= n) are symmetric.
// Everything that decides an inequality between eigenvalues of this triangle
// is done on the integer q.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trispec/geometry.hpp"
#include "trispec/report.hpp"

namespace trispec::equilateral {

/// 16 pi^2 / 9: eigenvalue per unit of q at side length 1.
inline constexpr double unit = 16.0 * pi * pi / 9.0;

/// lambda below 48 pi^2 is outside the range where the counting bounds hold.
inline constexpr double counting_threshold = 48.0 * pi * pi;

enum class ModeClass { full, antisym, sym };

inline const char* to_string(ModeClass c) {
  switch (c) {
    case ModeClass::full: return "full";
    case ModeClass::antisym: return "antisym";
    case ModeClass::sym: return "sym";
  }
  return "full";
}

inline ModeClass parse_mode_class(std::string_view s) {
  if (s == "full") return ModeClass::full;
  if (s == "antisym") return ModeClass::antisym;
  if (s == "sym") return ModeClass::sym;
  throw std::invalid_argument("unknown mode class: " + std::string(s));
}

struct ModeIndex {
  int m = 1;
  int n = 1;

  std::int64_t q() const { return std::int64_t{m} * m + std::int64_t{m} * n + std::int64_t{n} * n; }
  bool antisymmetric() const { return m > n; }
  ModeClass symmetry() const { return antisymmetric() ? ModeClass::antisym : ModeClass::sym; }

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
  friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

inline bool in_class(ModeIndex k, ModeClass c) {
  switch (c) {
    case ModeClass::full: return true;
    case ModeClass::antisym: return k.m > k.n;
    case ModeClass::sym: return k.m <= k.n;
  }
  return false;
}

inline double sigma(int m, int n, double sidelength = 1.0) {
  if (m < 1 || n < 1) throw std::invalid_argument("mode indices must be positive");
  if (!(sidelength > 0.0)) throw std::invalid_argument("side length must be positive");
  return unit * static_cast<double>(ModeIndex{m, n}.q()) / (sidelength * sidelength);
}

struct SpectrumEntry {
  int rank;  // 1-based
  ModeIndex mode;
  std::int64_t q;
  double lambda;
};

struct SpectrumTable {
  ModeClass mode_class = ModeClass::full;
  double sidelength = 1.0;
  std::vector<SpectrumEntry> entries;

  std::size_t size() const { return entries.size(); }
  const SpectrumEntry& operator[](std::size_t j) const { return entries[j]; }

  /// Sum of the first n exact q values.
  std::int64_t q_sum(std::size_t n) const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n && j < entries.size(); ++j) s += entries[j].q;
    return s;
  }
};

/// First n_max modes of the class, ascending in q; ties by ascending m.
inline SpectrumTable enumerate(int n_max, ModeClass c = ModeClass::full, double sidelength = 1.0) {
  if (n_max < 1) throw std::invalid_argument("enumerate: n_max must be >= 1");
  if (!(sidelength > 0.0)) throw std::invalid_argument("side length must be positive");

  // Grow the search radius until the class holds n_max modes with q <= bound.
  // Every mode with q <= bound has m, n < sqrt(bound).
  std::int64_t bound = 16;
  std::vector<ModeIndex> modes;
  for (;;) {
    modes.clear();
    int lim = static_cast<int>(std::sqrt(static_cast<double>(bound))) + 1;
    for (int m = 1; m <= lim; ++m)
      for (int n = 1; n <= lim; ++n) {
        ModeIndex k{m, n};
        if (k.q() <= bound && in_class(k, c)) modes.push_back(k);
      }
    if (static_cast<int>(modes.size()) >= n_max) break;
    bound *= 2;
  }
  std::sort(modes.begin(), modes.end(), [](ModeIndex a, ModeIndex b) {
    return a.q() != b.q() ? a.q() < b.q() : a.m < b.m;
  });

  SpectrumTable t{c, sidelength, {}};
  t.entries.reserve(n_max);
  for (int j = 0; j < n_max; ++j) {
    ModeIndex k = modes[j];
    t.entries.push_back({j + 1, k, k.q(), unit * static_cast<double>(k.q()) / (sidelength * sidelength)});
  }
  return t;
}

/// N(lambda) = #{ j : lambda_j(E_1) < lambda } by brute force over the
/// lattice quadrant. Antisymmetric count uses m > n.
///
/// The comparison q * 16 pi^2 / 9 < lambda is done as q < t(1 - 1e-13) with
/// t = 9 lambda / (16 pi^2), so a lambda that is an eigenvalue up to
/// rounding is excluded (strict inequality).
inline std::int64_t counting_exact(double lambda, ModeClass c = ModeClass::full) {
  if (!(lambda > 0.0)) throw std::invalid_argument("counting_exact: lambda must be positive");
  const double t = lambda / unit * (1.0 - 1e-13);
  const int r = static_cast<int>(std::ceil(std::sqrt(t))) + 1;
  std::int64_t count = 0;
  for (int m = 1; m <= r; ++m)
    for (int n = 1; n <= r; ++n) {
      ModeIndex k{m, n};
      if (in_class(k, c) && static_cast<double>(k.q()) < t) ++count;
    }
  return count;
}

struct CountingBounds {
  double lower;
  double upper;
};

/// Weyl-type two-sided bounds on N(lambda), valid for lambda > 48 pi^2.
inline CountingBounds counting_bounds(double lambda) {
  if (!(lambda > counting_threshold))
    throw std::domain_error("counting bounds hold only for lambda > 48 pi^2");
  double s = std::sqrt(lambda);
  double lead = sqrt3 / (16.0 * pi) * lambda;
  return {lead - (6.0 - sqrt3) / (4.0 * pi) * s - 0.5, lead - sqrt3 / (4.0 * pi) * s + 0.5};
}

/// Upper bound on the antisymmetric counting function, lambda > 48 pi^2.
inline double antisym_counting_upper(double lambda) {
  if (!(lambda > counting_threshold))
    throw std::domain_error("counting bounds hold only for lambda > 48 pi^2");
  return sqrt3 / (32.0 * pi) * lambda - sqrt3 / (4.0 * pi) * std::sqrt(lambda) + 0.75;
}

struct EigenvalueBounds {
  double lower;
  double upper_symbolic;  // inverted lower counting bound
  double upper;           // rounded form 29.03 j + 9.9 sqrt(29.03 j + 39) + 64
};

inline EigenvalueBounds eigenvalue_bounds(int j) {
  if (j < 17) throw std::domain_error("eigenvalue bounds hold only for j >= 17");
  const double c = 16.0 * pi / sqrt3;
  const double k = 13.0 - 4.0 * sqrt3;
  double lo = c * (j - 0.5) + 8.0 * std::sqrt(4.0 * pi / sqrt3 * (j - 0.5) + 1.0) + 8.0;
  double up_sym = c * (j + 0.5) + 4.0 / sqrt3 * (6.0 - sqrt3) * std::sqrt(c * (j + 0.5) + 4.0 * k) + 8.0 * k;
  double up = 29.03 * j + 9.9 * std::sqrt(29.03 * j + 39.0) + 64.0;
  return {lo, up_sym, up};
}

struct AntisymBounds {
  double lower_symbolic;
  double lower;  // rounded form 58 j + 8 sqrt(58 j - 28) - 12
};

inline AntisymBounds antisym_bounds(int j) {
  if (j < 9) throw std::domain_error("antisymmetric bounds hold only for j >= 9");
  const double c = 32.0 * pi / sqrt3;
  double lo_sym = c * (j - 0.75) + 8.0 * std::sqrt(c * (j - 0.75) + 16.0) + 32.0;
  double lo = 58.0 * j + 8.0 * std::sqrt(58.0 * j - 28.0) - 12.0;
  return {lo_sym, lo};
}

/// Number of checked ranks in the explicit comparison table.
inline constexpr int explicit_ranks = 110;

/// Ratio lower bound lambda^a_n / lambda_n used beyond the explicit table.
inline double tail_ratio(double n) {
  return (58.0 * n + 8.0 * std::sqrt(58.0 * n - 28.0) - 12.0) /
         (29.03 * n + 9.9 * std::sqrt(29.03 * n + 39.0) + 64.0);
}

/// 6 q^a_j > 11 q_j for each rank j (integers only), plus the partial-sum
/// inequality over j = 1..4.
inline Report verify_lemma_explicit() {
  Report r;
  r.claim = "lambda^a_j > 11/6 lambda_j for j = 1,2,3 and 5..110; partial sum through j = 4";
  const auto full = enumerate(explicit_ranks, ModeClass::full);
  const auto anti = enumerate(explicit_ranks, ModeClass::antisym);

  std::vector<int> violations;
  for (int j = 1; j <= explicit_ranks; ++j) {
    std::int64_t lhs = 6 * anti[j - 1].q, rhs = 11 * full[j - 1].q;
    bool holds = lhs > rhs;
    if (!holds) violations.push_back(j);
    // j = 4 is the one rank where the individual inequality is expected to fail.
    bool expected = j != 4;
    r.add(exact_check("6qa_" + std::to_string(j) + (expected ? " > " : " <= ") + "11q_" + std::to_string(j),
                      static_cast<double>(lhs), static_cast<double>(rhs), holds == expected,
                      holds ? "holds" : "violated"));
  }
  std::int64_t sa = anti.q_sum(4), sf = full.q_sum(4);
  r.add(exact_check("6*sum(qa_1..4) > 11*sum(q_1..4)", static_cast<double>(6 * sa), static_cast<double>(11 * sf),
                    6 * sa > 11 * sf));
  for (int j : violations) r.note("violation_rank", static_cast<double>(j));
  return r;
}

/// Lambda^a_n > 11/6 Lambda_n: exact sums up to rank min(n_max, 110), then
/// the closed-form ratio on a geometric grid of n in [110, 1e6].
inline Report verify_compequilateral(int n_max = explicit_ranks, int grid_points = 400) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  Report r;
  r.claim = "Lambda^a_n > 11/6 Lambda_n for all n";
  int exact_n = std::min(n_max, explicit_ranks);
  const auto full = enumerate(exact_n, ModeClass::full);
  const auto anti = enumerate(exact_n, ModeClass::antisym);
  std::int64_t sa = 0, sf = 0;
  int first_failure = 0;
  for (int n = 1; n <= exact_n; ++n) {
    sa += anti[n - 1].q;
    sf += full[n - 1].q;
    bool holds = 6 * sa > 11 * sf;
    if (!holds && first_failure == 0) first_failure = n;
    r.add(exact_check("6*Sa_" + std::to_string(n) + " > 11*S_" + std::to_string(n), static_cast<double>(6 * sa),
                      static_cast<double>(11 * sf), holds));
  }
  const double target = 11.0 / 6.0;
  const double lo = explicit_ranks, hi = 1e6;
  double worst_margin = tail_ratio(lo) - target;
  double worst_n = lo;
  for (int i = 0; i < grid_points; ++i) {
    double n = i == 0 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (grid_points - 1));
    double m = tail_ratio(n) - target;
    if (m < worst_margin) {
      worst_margin = m;
      worst_n = n;
    }
    if (m <= 0.0 && first_failure == 0) first_failure = static_cast<int>(n);
  }
  r.add(exact_check("tail ratio at n=110 > 11/6", tail_ratio(lo), target, tail_ratio(lo) > target));
  r.add(exact_check("min tail ratio on [110, 1e6] > 11/6", worst_margin + target, target, worst_margin > 0.0));
  r.note("worst_tail_n", worst_n);
  r.note("first_failure", static_cast<double>(first_failure));
  return r;
}

/// Counting bounds against the brute-force count on `points` log-spaced
/// lambda in (48 pi^2, hi].
inline Report verify_counting(int points = 200, double hi = 1e6) {
  if (points < 1) throw std::invalid_argument("verify_counting: points must be >= 1");
  if (!(hi > counting_threshold)) throw std::domain_error("verify_counting: hi must exceed 48 pi^2");
  Report r;
  r.claim = "lower(lambda) < N(lambda) < upper(lambda) and N_a(lambda) < upper_a(lambda) for lambda > 48 pi^2";
  int bad_lower = 0, bad_upper = 0, bad_anti = 0;
  double min_lower = 1e300, min_upper = 1e300, min_anti = 1e300;
  for (int i = 1; i <= points; ++i) {
    double lambda = counting_threshold * std::pow(hi / counting_threshold, static_cast<double>(i) / points);
    auto n = static_cast<double>(counting_exact(lambda));
    auto na = static_cast<double>(counting_exact(lambda, ModeClass::antisym));
    auto b = counting_bounds(lambda);
    double ua = antisym_counting_upper(lambda);
    min_lower = std::min(min_lower, n - b.lower);
    min_upper = std::min(min_upper, b.upper - n);
    min_anti = std::min(min_anti, ua - na);
    if (!(b.lower < n)) ++bad_lower;
    if (!(n < b.upper)) ++bad_upper;
    if (!(na < ua)) ++bad_anti;
  }
  r.add(exact_check("lower bound < N on all points", min_lower, 0.0, bad_lower == 0));
  r.add(exact_check("N < upper bound on all points", min_upper, 0.0, bad_upper == 0));
  r.add(exact_check("N_a < antisymmetric upper bound on all points", min_anti, 0.0, bad_anti == 0));
  r.note("points", static_cast<double>(points));
  return r;
}

}  // namespace trispec::equilateral
