#pragma once

// Conforming P1 finite elements for the Laplace eigenproblem on a triangle.
//
// Meshes are uniform refinements of the input triangle (each level splits
// every element into four). Each edge of the input triangle carries either a
// Dirichlet condition or the natural (Neumann) one. Discrete eigenvalues are
// Rayleigh-Ritz values on a subspace of H^1_0, hence upper bounds for the
// true Dirichlet eigenvalues, converging like h^2.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "trispec/geometry.hpp"

namespace trispec::fem {

using SparseMatrix = Eigen::SparseMatrix<double>;

inline constexpr int max_level = 10;

class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class cluster_split : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Which edges of the input triangle are clamped. Edge i joins vertex i and
/// vertex i+1 (mod 3).
using EdgeConditions = std::array<bool, 3>;
inline constexpr EdgeConditions all_dirichlet{true, true, true};

struct Mesh {
  Triangle domain;  // counter-clockwise copy of the input
  int level = 0;
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> elements;  // positively oriented
  std::vector<bool> boundary;                // lies on an edge of the domain
  std::vector<bool> dirichlet;               // value fixed to zero

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_elements() const { return elements.size(); }
  std::size_t num_free() const { return static_cast<std::size_t>(std::count(dirichlet.begin(), dirichlet.end(), false)); }
};

/// (2^l + 1)(2^l + 2)/2 vertices and 4^l elements.
inline Mesh mesh_triangle(const Triangle& t, int level, EdgeConditions dirichlet_edges = all_dirichlet) {
  t.require_nondegenerate();
  if (level < 0 || level > max_level)
    throw std::invalid_argument("mesh level must lie in [0, " + std::to_string(max_level) + "]");

  Mesh mesh;
  // Reorienting swaps v1 and v2, which maps edge 0 to edge 2 and vice versa.
  if (t.signed_area() < 0) {
    mesh.domain = Triangle{t.v[0], t.v[2], t.v[1]};
    std::swap(dirichlet_edges[0], dirichlet_edges[2]);
  } else {
    mesh.domain = t;
  }
  mesh.level = level;

  const int n = 1 << level;
  const Point o = mesh.domain.v[0];
  const Point e1 = mesh.domain.v[1] - o;
  const Point e2 = mesh.domain.v[2] - o;

  // Barycentric lattice: vertex (i, j) sits at o + (i e1 + j e2) / n.
  std::vector<int> row_start(n + 2, 0);
  for (int j = 0; j <= n; ++j) row_start[j + 1] = row_start[j] + (n - j + 1);
  auto index = [&](int i, int j) { return row_start[j] + i; };

  const std::size_t nv = static_cast<std::size_t>(row_start[n + 1]);
  mesh.vertices.resize(nv);
  mesh.boundary.assign(nv, false);
  mesh.dirichlet.assign(nv, false);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i + j <= n; ++i) {
      int k = index(i, j);
      mesh.vertices[k] = o + (static_cast<double>(i) / n) * e1 + (static_cast<double>(j) / n) * e2;
      std::array<bool, 3> on{j == 0, i + j == n, i == 0};
      mesh.boundary[k] = on[0] || on[1] || on[2];
      mesh.dirichlet[k] = (on[0] && dirichlet_edges[0]) || (on[1] && dirichlet_edges[1]) ||
                          (on[2] && dirichlet_edges[2]);
    }

  mesh.elements.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i + j < n; ++i) {
      mesh.elements.push_back({index(i, j), index(i + 1, j), index(i, j + 1)});
      if (i + j < n - 1) mesh.elements.push_back({index(i + 1, j), index(i + 1, j + 1), index(i, j + 1)});
    }
  return mesh;
}

/// Indexed-triangle text export: a vertex block (x y boundary dirichlet)
/// followed by an element block (three zero-based vertex indices).
inline void write_mesh(std::ostream& os, const Mesh& mesh) {
  os.precision(17);
  os << "# trispec mesh level " << mesh.level << "\n";
  os << "vertices " << mesh.num_vertices() << "\n";
  for (std::size_t k = 0; k < mesh.num_vertices(); ++k)
    os << mesh.vertices[k].x << ' ' << mesh.vertices[k].y << ' ' << int(mesh.boundary[k]) << ' '
       << int(mesh.dirichlet[k]) << "\n";
  os << "elements " << mesh.num_elements() << "\n";
  for (const auto& e : mesh.elements) os << e[0] << ' ' << e[1] << ' ' << e[2] << "\n";
}

/// Global P1 matrices restricted to the free degrees of freedom.
struct Forms {
  SparseMatrix stiffness;  // int grad u . grad v
  SparseMatrix mass;       // int u v
  SparseMatrix dyy;        // int u_y v_y
  SparseMatrix dxy;        // int (u_x v_y + u_y v_x) / 2
  std::vector<int> dof_of_vertex;  // -1 on clamped vertices
  std::vector<int> vertex_of_dof;
};

inline Forms assemble(const Mesh& mesh) {
  Forms f;
  f.dof_of_vertex.assign(mesh.num_vertices(), -1);
  for (std::size_t k = 0; k < mesh.num_vertices(); ++k)
    if (!mesh.dirichlet[k]) {
      f.dof_of_vertex[k] = static_cast<int>(f.vertex_of_dof.size());
      f.vertex_of_dof.push_back(static_cast<int>(k));
    }
  const int n = static_cast<int>(f.vertex_of_dof.size());

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> ks, ms, ys, xs;
  ks.reserve(9 * mesh.num_elements());
  ms.reserve(9 * mesh.num_elements());
  ys.reserve(9 * mesh.num_elements());
  xs.reserve(9 * mesh.num_elements());

  for (const auto& e : mesh.elements) {
    std::array<Point, 3> p{mesh.vertices[e[0]], mesh.vertices[e[1]], mesh.vertices[e[2]]};
    double area = 0.5 * cross(p[1] - p[0], p[2] - p[0]);
    // grad phi_i = (b_i, c_i) / (2 area)
    std::array<double, 3> b, c;
    for (int i = 0; i < 3; ++i) {
      const Point& q1 = p[(i + 1) % 3];
      const Point& q2 = p[(i + 2) % 3];
      b[i] = q1.y - q2.y;
      c[i] = q2.x - q1.x;
    }
    for (int i = 0; i < 3; ++i) {
      int gi = f.dof_of_vertex[e[i]];
      if (gi < 0) continue;
      for (int j = 0; j < 3; ++j) {
        int gj = f.dof_of_vertex[e[j]];
        if (gj < 0) continue;
        double s = 1.0 / (4.0 * area);
        ks.emplace_back(gi, gj, s * (b[i] * b[j] + c[i] * c[j]));
        ms.emplace_back(gi, gj, area / 12.0 * (i == j ? 2.0 : 1.0));
        ys.emplace_back(gi, gj, s * c[i] * c[j]);
        xs.emplace_back(gi, gj, s * 0.5 * (b[i] * c[j] + c[i] * b[j]));
      }
    }
  }
  auto build = [n](SparseMatrix& a, const std::vector<Triplet>& t) {
    a.resize(n, n);
    a.setFromTriplets(t.begin(), t.end());
  };
  build(f.stiffness, ks);
  build(f.mass, ms);
  build(f.dyy, ys);
  build(f.dxy, xs);
  return f;
}

struct SolverOptions {
  double tolerance = 1e-10;  // relative residual ||K u - lambda M u||_{M^-1} / lambda
  int max_iterations = 500;
  int guard_vectors = 8;     // extra block columns beyond k
  std::uint64_t seed = 20110101;
};

struct EigenResult {
  std::vector<double> values;           // ascending
  Eigen::MatrixXd vectors;              // columns over free dofs, mass-orthonormal
  std::vector<double> residuals;        // relative, per eigenpair
  std::vector<int> vertex_of_dof;
  int level = 0;
  int iterations = 0;

  std::size_t size() const { return values.size(); }
};

namespace detail {

/// Fix the sign so the first entry of largest magnitude is positive.
inline void normalize_sign(Eigen::Ref<Eigen::VectorXd> x) {
  double big = x.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) >= (1.0 - 1e-9) * big) {
      if (x[i] < 0) x = -x;
      return;
    }
}

inline EigenResult dense_solve(const Forms& f, int k) {
  Eigen::MatrixXd kd(f.stiffness), md(f.mass);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(kd, md);
  if (es.info() != Eigen::Success) throw solver_error("dense generalized eigensolve failed");
  EigenResult r;
  r.vectors = es.eigenvectors().leftCols(k);
  for (int i = 0; i < k; ++i) {
    r.values.push_back(es.eigenvalues()[i]);
    r.residuals.push_back(0.0);
  }
  return r;
}

}  // namespace detail

/// Smallest k eigenpairs of the pencil (stiffness, mass) on the free dofs.
///
/// Shift-invert block subspace iteration at shift zero: Y = K^{-1} M X,
/// followed by Rayleigh-Ritz on span(Y). The block carries k + guard
/// columns; the first k Ritz pairs are accepted once each relative residual
/// falls below the tolerance. Output is deterministic for a fixed input.
inline EigenResult solve_lowest(const Mesh& mesh, int k, const SolverOptions& opt = {}) {
  if (k < 1) throw std::invalid_argument("solve_lowest: k must be >= 1");
  Forms f = assemble(mesh);
  const int n = static_cast<int>(f.vertex_of_dof.size());
  if (k >= n)
    throw std::invalid_argument("solve_lowest: k = " + std::to_string(k) + " needs more than " + std::to_string(n) +
                                " free vertices; refine the mesh");

  EigenResult r;
  const int block = std::min(n, k + std::max(k, opt.guard_vectors));
  if (n <= 400 || block == n) {
    r = detail::dense_solve(f, k);
  } else {
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> kfac(f.stiffness);
    if (kfac.info() != Eigen::Success) throw solver_error("stiffness factorization failed");
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> mfac(f.mass);
    if (mfac.info() != Eigen::Success) throw solver_error("mass factorization failed");

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXd x(n, block);
    for (int j = 0; j < block; ++j)
      for (int i = 0; i < n; ++i) x(i, j) = uni(rng);

    Eigen::VectorXd theta;
    bool converged = false;
    int it = 0;
    for (; it < opt.max_iterations && !converged; ++it) {
      Eigen::MatrixXd y = kfac.solve(f.mass * x);
      Eigen::MatrixXd ky = f.stiffness * y;
      Eigen::MatrixXd a = y.transpose() * ky;
      Eigen::MatrixXd b = y.transpose() * (f.mass * y);
      a = 0.5 * (a + a.transpose()).eval();
      b = 0.5 * (b + b.transpose()).eval();
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b);
      if (es.info() != Eigen::Success) throw solver_error("Rayleigh-Ritz step failed");
      theta = es.eigenvalues();
      x = y * es.eigenvectors();

      Eigen::MatrixXd res = f.stiffness * x.leftCols(k) - f.mass * x.leftCols(k) * theta.head(k).asDiagonal();
      Eigen::MatrixXd mres = mfac.solve(res);
      converged = true;
      r.residuals.assign(k, 0.0);
      for (int j = 0; j < k; ++j) {
        double rn = std::sqrt(std::max(0.0, res.col(j).dot(mres.col(j))));
        r.residuals[j] = rn / theta[j];
        if (!(r.residuals[j] < opt.tolerance)) converged = false;
      }
    }
    if (!converged)
      throw solver_error("eigensolver did not converge within " + std::to_string(opt.max_iterations) + " iterations");
    r.iterations = it;
    r.vectors = x.leftCols(k);
    r.values.assign(theta.data(), theta.data() + k);
  }
  for (int j = 0; j < k; ++j) detail::normalize_sign(r.vectors.col(j));
  r.vertex_of_dof = std::move(f.vertex_of_dof);
  r.level = mesh.level;
  return r;
}

/// Richardson extrapolation under O(h^2) convergence.
inline std::vector<double> extrapolate(const EigenResult& coarse, const EigenResult& fine) {
  if (fine.level != coarse.level + 1) throw std::invalid_argument("extrapolate: levels must be consecutive");
  std::size_t n = std::min(coarse.size(), fine.size());
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = fine.values[j] + (fine.values[j] - coarse.values[j]) / 3.0;
  return out;
}

/// Two-level solve: raw values on both levels, the extrapolated values, and
/// the size of the Richardson correction as an error estimate.
struct Spectrum {
  EigenResult coarse;
  EigenResult fine;
  std::vector<double> values;
  std::vector<double> errors;

  double sum(std::size_t n) const {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += values.at(j);
    return s;
  }
  double sum_error(std::size_t n) const {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += errors.at(j);
    return s;
  }
};

inline Spectrum solve_extrapolated(const Triangle& t, int k, int level, EdgeConditions dirichlet_edges = all_dirichlet,
                                   const SolverOptions& opt = {}) {
  if (level < 1) throw std::invalid_argument("extrapolation needs level >= 1");
  Spectrum s;
  s.coarse = solve_lowest(mesh_triangle(t, level - 1, dirichlet_edges), k, opt);
  s.fine = solve_lowest(mesh_triangle(t, level, dirichlet_edges), k, opt);
  s.values = extrapolate(s.coarse, s.fine);
  s.errors.resize(s.values.size());
  for (std::size_t j = 0; j < s.values.size(); ++j) s.errors[j] = std::abs(s.values[j] - s.fine.values[j]);
  return s;
}

/// Relative gap below which neighbouring eigenvalues count as one cluster.
inline constexpr double cluster_gap = 1e-6;

/// Energy fractions of the first n eigenfunctions of T(a,b): gamma in the
/// y-derivative and delta in the mixed xy-derivative.
struct RayleighData {
  double gamma = 0.0;
  double delta = 0.0;
  int n = 0;
  double gamma_fine = 0.0;
  double delta_fine = 0.0;
  std::vector<double> eigenvalues;  // extrapolated, first n
};

namespace detail {

struct Fractions {
  double gamma, delta;
};

inline Fractions energy_fractions(const Mesh& mesh, const EigenResult& r, int n) {
  if (n < static_cast<int>(r.size()) && (r.values[n] - r.values[n - 1]) < cluster_gap * r.values[n - 1])
    throw cluster_split("rank " + std::to_string(n) +
                        " splits a degenerate eigenvalue cluster; choose n at a cluster boundary");
  Forms f = assemble(mesh);
  double energy = 0.0, yy = 0.0, xy = 0.0;
  for (int j = 0; j < n; ++j) {
    auto u = r.vectors.col(j);
    energy += u.dot(f.stiffness * u);
    yy += u.dot(f.dyy * u);
    xy += u.dot(f.dxy * u);
  }
  return {yy / energy, xy / energy};
}

}  // namespace detail

/// Fractions from an extrapolated Dirichlet spectrum of t holding at least
/// n + 1 eigenpairs, so that cluster splitting at rank n can be detected.
inline RayleighData rayleigh_data(const Triangle& t, const Spectrum& s, int n) {
  if (n < 1) throw std::invalid_argument("rayleigh_data: n must be >= 1");
  if (static_cast<int>(s.values.size()) < n) throw std::invalid_argument("rayleigh_data: spectrum too short");
  auto fc = detail::energy_fractions(mesh_triangle(t, s.coarse.level), s.coarse, n);
  auto ff = detail::energy_fractions(mesh_triangle(t, s.fine.level), s.fine, n);
  RayleighData d;
  d.n = n;
  d.gamma_fine = ff.gamma;
  d.delta_fine = ff.delta;
  d.gamma = ff.gamma + (ff.gamma - fc.gamma) / 3.0;
  d.delta = ff.delta + (ff.delta - fc.delta) / 3.0;
  d.eigenvalues.assign(s.values.begin(), s.values.begin() + n);
  return d;
}

inline RayleighData rayleigh_data(const FanTriangle& fan, int n, int level, const SolverOptions& opt = {}) {
  if (n < 1) throw std::invalid_argument("rayleigh_data: n must be >= 1");
  if (level < 1) throw std::invalid_argument("rayleigh_data: level must be >= 1");
  Triangle t = fan.triangle();
  return rayleigh_data(t, solve_extrapolated(t, n + 1, level, all_dirichlet, opt), n);
}

enum class ModeSymmetry { symmetric, antisymmetric };

inline const char* to_string(ModeSymmetry s) { return s == ModeSymmetry::symmetric ? "symmetric" : "antisymmetric"; }

/// Lowest tones of an isosceles triangle split by symmetry class, from the
/// half triangle: clamped on the symmetry line for the antisymmetric tone,
/// free on it for the symmetric ones.
struct IsoscelesTones {
  double lambda1;
  double lambda_a;
  double lambda_s;
  double error1, error_a, error_s;
};

/// Half-triangle edge 0 is the symmetry line.
inline constexpr EdgeConditions symmetry_line_free{false, true, true};

inline IsoscelesTones half_triangle_tones(const IsoscelesAperture& t, int level, const SolverOptions& opt = {}) {
  Triangle half = t.half_triangle();
  Spectrum anti = solve_extrapolated(half, 1, level, all_dirichlet, opt);
  Spectrum sym = solve_extrapolated(half, 2, level, symmetry_line_free, opt);
  return {sym.values[0], anti.values[0], sym.values[1], sym.errors[0], anti.errors[0], sym.errors[1]};
}

/// Symmetry class of the second Dirichlet mode.
inline ModeSymmetry classify_second_mode(const IsoscelesAperture& t, int level, const SolverOptions& opt = {}) {
  if (std::abs(t.alpha - pi / 3.0) < 1e-6)
    throw std::invalid_argument("aperture pi/3 is equilateral: second eigenvalue is degenerate");
  auto tones = half_triangle_tones(t, level, opt);
  return tones.lambda_s < tones.lambda_a ? ModeSymmetry::symmetric : ModeSymmetry::antisymmetric;
}

}  // namespace trispec::fem
