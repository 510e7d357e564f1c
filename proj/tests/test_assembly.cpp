// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "blebsim/assembly.hpp"
#include "blebsim/error.hpp"
#include "blebsim/geometry.hpp"

using namespace bleb;

namespace {

SurfaceMesh skew_triangle() {
  return build_mesh({{0.1, 0.2, 0.3}, {1.4, -0.3, 0.5}, {0.2, 1.1, 0.9}}, {{0, 1, 2}}, {.require_closed = false});
}

// Seven-point rule on the reference triangle, exact for degree 5.
struct QuadPoint {
  double l1, l2, w;
};
std::array<QuadPoint, 7> seven_point_rule() {
  const double a1 = 0.059715871789770, b1 = 0.470142064105115;
  const double a2 = 0.797426985353087, b2 = 0.101286507323456;
  const double w0 = 0.225, w1 = 0.132394152788506, w2 = 0.125939180544827;
  return {{{1.0 / 3, 1.0 / 3, w0},
           {a1, b1, w1},
           {b1, a1, w1},
           {b1, b1, w1},
           {a2, b2, w2},
           {b2, a2, w2},
           {b2, b2, w2}}};
}

double quadrature_mass(double area, int i, int j, std::array<double, 3> coeff) {
  double s = 0.0;
  for (const auto& q : seven_point_rule()) {
    const std::array<double, 3> phi = {1.0 - q.l1 - q.l2, q.l1, q.l2};
    const double c = coeff[0] * phi[0] + coeff[1] * phi[1] + coeff[2] * phi[2];
    s += q.w * c * phi[i] * phi[j];
  }
  return s * area;
}

}  // namespace

TEST(Assembly, MassMatchesQuadrature) {
  const SurfaceMesh m = skew_triangle();
  const SparseMatrix mass = assemble_mass(m);
  const double area = m.geometry(0).area;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(mass.at(i, j), quadrature_mass(area, i, j, {1, 1, 1}), 1e-13);
    }
  }
}

TEST(Assembly, StiffnessOnReferenceTriangle) {
  const SurfaceMesh m = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}, {.require_closed = false});
  const SparseMatrix s = assemble_stiffness(m);
  const double expected[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(s.at(i, j), expected[i][j], 1e-15);
  }
}

TEST(Assembly, WeightedMassWithConstantCoefficientIsScaledMass) {
  const SurfaceMesh m = cube_sphere(4);
  const SparseMatrix mass = assemble_mass(m);
  const std::vector<double> c(m.n_vertices(), 2.5);
  const SparseMatrix wm = assemble_weighted_mass(m, c);
  ASSERT_TRUE(wm.same_pattern(mass));
  for (std::size_t k = 0; k < mass.nnz(); ++k) EXPECT_NEAR(wm.values()[k], 2.5 * mass.values()[k], 1e-15);
}

TEST(Assembly, WeightedMassIntegratesLinearCoefficientToSecondOrder) {
  // Row sums integrate c * phi_i, a quadratic, which the edge-midpoint rule gets exactly.
  const SurfaceMesh m = skew_triangle();
  const std::array<double, 3> c = {0.5, 2.0, 3.5};
  const SparseMatrix wm = assemble_weighted_mass(m, c);
  const auto rows = wm.row_sums();
  for (int i = 0; i < 3; ++i) {
    double expect = 0.0;
    for (int j = 0; j < 3; ++j) expect += quadrature_mass(m.geometry(0).area, i, j, c);
    EXPECT_NEAR(rows[i], expect, 1e-13);
  }
}

TEST(Assembly, WeightedMassRejectsNegativeCoefficient) {
  const SurfaceMesh m = skew_triangle();
  const std::array<double, 3> c = {1.0, -1.0, 1.0};
  EXPECT_THROW(assemble_weighted_mass(m, c), NegativeCoefficient);
}

TEST(Assembly, LumpedMassIsRowSum) {
  const SurfaceMesh m = octahedron();
  const SparseMatrix mass = assemble_mass(m);
  const auto l = lump(mass);
  const auto r = mass.row_sums();
  for (std::size_t i = 0; i < l.size(); ++i) EXPECT_DOUBLE_EQ(l[i], r[i]);
}

TEST(Assembly, OctahedronVolume) {
  const SurfaceMesh m = octahedron();
  EXPECT_NEAR(volume(m, m.vertices()), 4.0 / 3.0, 1e-15);
}

TEST(Assembly, SphereAreaAndVolumeFromBelow) {
  for (int n : {4, 6, 8}) {
    const SurfaceMesh m = cube_sphere(n);
    EXPECT_LT(stats(m).total_area, 4.0 * std::numbers::pi);
    EXPECT_LT(volume(m, m.vertices()), 4.0 * std::numbers::pi / 3.0);
  }
}

TEST(Assembly, UnitGradientLoadEqualsStiffnessTimesField) {
  const SurfaceMesh m = make_discocyte(4);
  const SparseMatrix s = assemble_stiffness(m);
  const VectorField& u = m.vertices();
  const VectorField load = assemble_gradient_load(m, u, [](const Mat3&) { return 1.0; });
  const VectorField su = multiply_field(s, u);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(norm(load[i] - su[i]), 0.0, 1e-12);
}

TEST(Assembly, IdentityGradientHasFrobeniusNormSqrtTwo) {
  const SurfaceMesh m = make_discocyte(4);
  for (std::size_t t = 0; t < m.n_triangles(); ++t) {
    EXPECT_NEAR(frobenius_sq(triangle_gradient(m, t, m.vertices())), 2.0, 1e-12);
  }
}

TEST(Assembly, TensionRhsScalesWithRestFactor) {
  const SurfaceMesh m = cube_sphere(4);
  const VectorField a = assemble_tension_rhs(m, m.vertices(), 1.0);
  const VectorField b = assemble_tension_rhs(m, m.vertices(), 0.5);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(norm(0.5 * a[i] - b[i]), 0.0, 1e-14);
}

TEST(Assembly, MassNormOfIdentityIsSecondMoment) {
  // sum_c id_c^T M id_c integrates |x|^2 = 1 on the sphere up to O(h^2).
  const SurfaceMesh m = cube_sphere(8);
  const double n2 = std::pow(mass_norm(assemble_mass(m), m.vertices()), 2);
  EXPECT_NEAR(n2 / stats(m).total_area, 1.0, 5e-3);
}

TEST(Assembly, ComponentRoundTrip) {
  VectorField f = {{1, 2, 3}, {4, 5, 6}};
  const auto y = component(f, 1);
  EXPECT_EQ(y, (std::vector<double>{2, 5}));
  const std::vector<double> z = {7, 8};
  set_component(f, 2, z);
  EXPECT_EQ(f[1], (Vec3{4, 5, 8}));
}
