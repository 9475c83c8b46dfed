#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "trispec/fem.hpp"
#include "trispec/geometry.hpp"

using namespace trispec;
using namespace trispec::fem;

namespace {

const Triangle unit_equilateral{{0.0, 0.0}, {1.0, 0.0}, {0.5, sqrt3 / 2.0}};

double unit_value() { return 16.0 * pi * pi / 9.0; }

}  // namespace

TEST(Fem, MeshCounts) {
  auto m0 = mesh_triangle(unit_equilateral, 0);
  EXPECT_EQ(m0.num_elements(), 1u);
  EXPECT_EQ(m0.num_vertices(), 3u);
  EXPECT_EQ(mesh_triangle(unit_equilateral, 3).num_elements(), 64u);
  for (int l = 0; l <= 6; ++l) {
    std::size_t n = std::size_t{1} << l;
    auto m = mesh_triangle(unit_equilateral, l);
    EXPECT_EQ(m.num_vertices(), (n + 1) * (n + 2) / 2);
    EXPECT_EQ(m.num_elements(), n * n);
  }
  EXPECT_THROW(mesh_triangle(unit_equilateral, max_level + 1), std::invalid_argument);
  EXPECT_THROW(mesh_triangle(unit_equilateral, -1), std::invalid_argument);
}

TEST(Fem, MeshOrientationAndBoundary) {
  Triangle cw{{0.0, 0.0}, {0.5, sqrt3 / 2.0}, {1.0, 0.0}};
  auto m = mesh_triangle(cw, 4);
  double total = 0.0;
  for (const auto& e : m.elements) {
    Triangle t{m.vertices[e[0]], m.vertices[e[1]], m.vertices[e[2]]};
    EXPECT_GT(t.signed_area(), 0.0);
    total += t.area();
  }
  EXPECT_NEAR(total, cw.area(), 1e-14);
  // Boundary flags are exactly the vertices on the edges.
  for (std::size_t k = 0; k < m.num_vertices(); ++k) {
    Point p = m.vertices[k];
    bool on_edge = false;
    for (int i = 0; i < 3; ++i) {
      Point a = cw.v[i], b = cw.v[(i + 1) % 3];
      if (std::abs(cross(b - a, p - a)) < 1e-12) on_edge = true;
    }
    EXPECT_EQ(static_cast<bool>(m.boundary[k]), on_edge) << k;
  }
  EXPECT_EQ(m.num_free(), 105u);  // interior vertices of a 16-grid: 15*14/2
}

TEST(Fem, MeshExportFormat) {
  std::ostringstream os;
  write_mesh(os, mesh_triangle(unit_equilateral, 1));
  std::string s = os.str();
  EXPECT_NE(s.find("vertices 6"), std::string::npos);
  EXPECT_NE(s.find("elements 4"), std::string::npos);
}

TEST(Fem, AssemblyIdentities) {
  auto m = mesh_triangle(unit_equilateral, 3, EdgeConditions{false, false, false});
  auto f = assemble(m);
  // Pure Neumann: constants are in the kernel of the stiffness matrix, and
  // the mass matrix integrates 1 to the area.
  Eigen::VectorXd one = Eigen::VectorXd::Ones(f.stiffness.rows());
  EXPECT_LT((f.stiffness * one).norm(), 1e-12);
  EXPECT_NEAR(one.dot(f.mass * one), unit_equilateral.area(), 1e-14);
  // u = y: stiffness energy equals area, dyy energy equals area, dxy zero.
  Eigen::VectorXd y(f.stiffness.rows()), x(f.stiffness.rows());
  for (int i = 0; i < y.size(); ++i) {
    y[i] = m.vertices[f.vertex_of_dof[i]].y;
    x[i] = m.vertices[f.vertex_of_dof[i]].x;
  }
  EXPECT_NEAR(y.dot(f.stiffness * y), unit_equilateral.area(), 1e-13);
  EXPECT_NEAR(y.dot(f.dyy * y), unit_equilateral.area(), 1e-13);
  EXPECT_NEAR(x.dot(f.dyy * x), 0.0, 1e-13);
  // u = x + y: int u_x u_y = area.
  Eigen::VectorXd s = x + y;
  EXPECT_NEAR(s.dot(f.dxy * s), unit_equilateral.area(), 1e-13);
}

TEST(Fem, EquilateralCalibration) {
  auto s = solve_extrapolated(unit_equilateral, 3, 7);
  const double l1 = 3.0 * unit_value(), l2 = 7.0 * unit_value();
  EXPECT_NEAR(s.values[0], l1, 0.005 * l1);
  EXPECT_NEAR(s.values[1], l2, 0.005 * l2);
  EXPECT_NEAR(s.values[2], l2, 0.005 * l2);
  EXPECT_NEAR(s.values[1], s.values[2], 0.005 * l2);
  // Conforming: raw values bound the true ones from above; extrapolation helps.
  for (int j = 0; j < 3; ++j) EXPECT_GT(s.fine.values[j], j == 0 ? l1 : l2);
  EXPECT_LT(std::abs(s.values[0] - l1), std::abs(s.fine.values[0] - l1));
  EXPECT_GE(s.values[0], l1 - 1e-3);
}

TEST(Fem, MonotoneUnderRefinement) {
  EigenResult prev = solve_lowest(mesh_triangle(unit_equilateral, 3), 3);
  for (int l = 4; l <= 6; ++l) {
    EigenResult cur = solve_lowest(mesh_triangle(unit_equilateral, l), 3);
    for (int j = 0; j < 3; ++j) EXPECT_LE(cur.values[j], prev.values[j] + 1e-10);
    prev = cur;
  }
}

TEST(Fem, MassOrthonormalAndEnergy) {
  auto mesh = mesh_triangle(FanTriangle(0.2, 1.5).triangle(), 5);
  auto r = solve_lowest(mesh, 4);
  auto f = assemble(mesh);
  Eigen::MatrixXd g = r.vectors.transpose() * (f.mass * r.vectors);
  EXPECT_LT((g - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-10);
  double energy = 0.0, sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    energy += r.vectors.col(j).dot(f.stiffness * r.vectors.col(j));
    sum += r.values[j];
    EXPECT_LT(r.residuals[j], 1e-10);
  }
  EXPECT_NEAR(energy, sum, 1e-10 * sum);
  for (int j = 1; j < 4; ++j) EXPECT_LE(r.values[j - 1], r.values[j]);
}

TEST(Fem, IterativeMatchesDense) {
  // Level 5 has 465 free dofs, so the subspace iteration path is used.
  auto mesh = mesh_triangle(FanTriangle(-0.3, 1.1).triangle(), 5);
  ASSERT_GT(mesh.num_free(), 400u);
  auto r = solve_lowest(mesh, 5);
  auto f = assemble(mesh);
  Eigen::MatrixXd kd(f.stiffness), md(f.mass);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(kd, md);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(r.values[j], es.eigenvalues()[j], 1e-9 * es.eigenvalues()[j]);
}

TEST(Fem, Deterministic) {
  auto mesh = mesh_triangle(FanTriangle(0.1, 2.0).triangle(), 6);
  auto a = solve_lowest(mesh, 3), b = solve_lowest(mesh, 3);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ((a.vectors - b.vectors).norm(), 0.0);
}

TEST(Fem, SolveArgumentErrors) {
  auto mesh = mesh_triangle(unit_equilateral, 2);
  EXPECT_THROW(solve_lowest(mesh, 0), std::invalid_argument);
  EXPECT_THROW(solve_lowest(mesh, static_cast<int>(mesh.num_free())), std::invalid_argument);
  auto a = solve_lowest(mesh_triangle(unit_equilateral, 3), 1);
  auto b = solve_lowest(mesh_triangle(unit_equilateral, 5), 1);
  EXPECT_THROW(extrapolate(a, b), std::invalid_argument);
}

TEST(Fem, ExtrapolationOfExactInput) {
  EigenResult a, b;
  a.level = 3;
  b.level = 4;
  a.values = b.values = {2.5, 7.0};
  auto x = extrapolate(a, b);
  EXPECT_EQ(x[0], 2.5);
  EXPECT_EQ(x[1], 7.0);
}

TEST(Fem, ScaleCovariance) {
  Triangle t = FanTriangle(0.3, 1.4).triangle();
  const double s = 2.5;
  Triangle big{{s * t.v[0].x, s * t.v[0].y}, {s * t.v[1].x, s * t.v[1].y}, {s * t.v[2].x, s * t.v[2].y}};
  auto a = solve_lowest(mesh_triangle(t, 5), 3), b = solve_lowest(mesh_triangle(big, 5), 3);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(b.values[j] * s * s, a.values[j], 1e-10 * a.values[j]);
}

TEST(Fem, HalfEquilateralFundamental) {
  // T(1, 2 sqrt3) is half of the side-4 equilateral triangle.
  auto s = solve_extrapolated(FanTriangle(1.0, 2.0 * sqrt3).triangle(), 1, 7);
  EXPECT_NEAR(s.values[0], 7.0 * pi * pi / 9.0, 0.002 * 7.0 * pi * pi / 9.0);
}

TEST(Fem, DomainMonotonicity) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.05, 0.9);
  for (int k = 0; k < 10; ++k) {
    Triangle outer = FanTriangle(u(rng) - 0.5, 0.5 + 2.0 * u(rng)).triangle();
    // Inner triangle: shrink toward the centroid and nudge one vertex inward.
    Point c = (1.0 / 3.0) * (outer.v[0] + outer.v[1] + outer.v[2]);
    double f = u(rng);
    Triangle inner{c + f * (outer.v[0] - c), c + f * (outer.v[1] - c), outer.v[2] + (0.5 * u(rng)) * (c - outer.v[2])};
    auto a = solve_extrapolated(inner, 2, 6), b = solve_extrapolated(outer, 2, 6);
    for (int j = 0; j < 2; ++j) EXPECT_GE(a.values[j], b.values[j] * (1.0 - 0.002));
  }
}

TEST(Fem, RayleighDataSymmetricFan) {
  for (int n : {1, 2, 3}) {
    auto d = rayleigh_data(FanTriangle(0.0, 2.5), n, 6);
    EXPECT_GE(d.gamma, 0.0);
    EXPECT_LE(d.gamma, 1.0);
    EXPECT_LT(std::abs(d.delta), 1e-6);
    EXPECT_EQ(d.n, n);
  }
  auto g = rayleigh_data(FanTriangle(0.4, 1.2), 2, 6);
  EXPECT_GE(g.gamma, 0.0);
  EXPECT_LE(g.gamma, 1.0);
  EXPECT_LE(std::abs(g.delta), 0.5);
}

TEST(Fem, RayleighDataEquilateralFixture) {
  // Rotation invariance of a single isolated mode forces gamma_1 = 1/2 on
  // the equilateral triangle (the mode is invariant under 120-degree turns).
  auto d = rayleigh_data(FanTriangle(0.0, sqrt3), 1, 6);
  EXPECT_NEAR(d.gamma, 0.5, 1e-4);
  EXPECT_THROW(rayleigh_data(FanTriangle(0.0, sqrt3), 2, 5), cluster_split);
}

TEST(Fem, ClassifySecondMode) {
  EXPECT_EQ(classify_second_mode(IsoscelesAperture(pi / 4.0), 6), ModeSymmetry::symmetric);
  EXPECT_EQ(classify_second_mode(IsoscelesAperture(pi / 2.0), 6), ModeSymmetry::antisymmetric);
  EXPECT_EQ(classify_second_mode(IsoscelesAperture(pi / 6.0), 6), ModeSymmetry::symmetric);
  EXPECT_THROW(classify_second_mode(IsoscelesAperture(pi / 3.0), 6), std::invalid_argument);
}

TEST(Fem, HalfTriangleTonesAtSixthOfPi) {
  auto t = half_triangle_tones(IsoscelesAperture(pi / 6.0), 7);
  EXPECT_NEAR(t.lambda1, 104.96, 0.01 * 104.96);
  EXPECT_NEAR(t.lambda_a, 293.55, 0.01 * 293.55);
  EXPECT_LT(t.lambda_s, t.lambda_a);
  // Half-triangle fundamental agrees with the whole triangle.
  auto full = solve_extrapolated(IsoscelesAperture(pi / 6.0).triangle(), 1, 7);
  EXPECT_NEAR(t.lambda1, full.values[0], 1e-4 * full.values[0]);
}
