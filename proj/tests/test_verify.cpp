// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "blebsim/error.hpp"
#include "blebsim/geometry.hpp"
#include "blebsim/verify.hpp"

using namespace bleb;

TEST(Verify, EocFromErrors) {
  EocReport r;
  r.quantities = {"e"};
  r.rows = {{1, 0.4, {1.0}}, {2, 0.2, {0.25}}, {3, 0.1, {0.125}}};
  const auto e = r.eoc(0);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_DOUBLE_EQ(e[0], 2.0);
  EXPECT_DOUBLE_EQ(e[1], 1.0);
  EXPECT_DOUBLE_EQ(r.min_eoc(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(r.min_eoc(0, 5), 1.0);
}

TEST(Verify, IdentitySuiteOnOpenPatch) {
  const SurfaceMesh m = build_mesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{0, 1, 2}, {0, 2, 3}},
                                   {.require_closed = false});
  const IdentityReport r = identity_suite(m);
  EXPECT_EQ(r.checks.size(), 4u);
  EXPECT_TRUE(r.all_passed());
}

TEST(Verify, IdentitySuiteOnClosedMeshes) {
  EXPECT_TRUE(identity_suite(octahedron()).all_passed());
  EXPECT_TRUE(identity_suite(make_discocyte(4)).all_passed());
  EXPECT_TRUE(identity_suite(cube_sphere(7)).all_passed());
}

TEST(Verify, GeometricConvergenceIsSecondOrder) {
  const EocReport r = geometric_convergence({1, 2, 3, 4});
  for (const auto& row : r.rows) {
    EXPECT_GT(row.errors[0], 0.0);
    EXPECT_GT(row.errors[1], 0.0);
  }
  EXPECT_GT(r.min_eoc(0, 2), 1.8);
  EXPECT_GT(r.min_eoc(1, 2), 1.8);
}

TEST(Verify, ManufacturedErrorsDecrease) {
  ManufacturedOptions opts;
  opts.t_end = 0.05;
  opts.solver = SolverMode::lumped;
  const EocReport r = manufactured_convergence({2, 3, 4}, opts);
  ASSERT_EQ(r.rows.size(), 3u);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    EXPECT_LT(r.rows[i].errors[0], r.rows[i - 1].errors[0]);
    EXPECT_LT(r.rows[i].errors[2], r.rows[i - 1].errors[2]);
  }
  EXPECT_GT(r.min_eoc(0, 1), 1.0);
}

TEST(Verify, ManufacturedConsistentMassCoarse) {
  ManufacturedOptions opts;
  opts.t_end = 0.05;
  const EocReport r = manufactured_convergence({1, 2, 3}, opts);
  for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_LT(r.rows[i].errors[0], r.rows[i - 1].errors[0]);
}

TEST(Verify, ManufacturedStartsExact) {
  // Vertices lie on the sphere, so interpolating the exact solution at t = 0 is exact.
  const SurfaceMesh mesh = cube_sphere(4);
  const StepOperators ops = assemble_operators(mesh);
  const SimState s = initial_state(mesh, ops, ParamSet{});
  VectorField diff(mesh.n_vertices());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = s.U[i] - mesh.vertices()[i];
  EXPECT_EQ(mass_norm(*ops.M, diff), 0.0);
}

TEST(Verify, DenseOracleDetectsSingularSystem) {
  // No time derivative and no coupling: constants lie in the kernel of S.
  const SurfaceMesh mesh = octahedron();
  StepSystem sys;
  auto S = std::make_shared<SparseMatrix>(assemble_stiffness(mesh));
  sys.A = *S;
  sys.S = S;
  sys.M = std::make_shared<SparseMatrix>(assemble_mass(mesh));
  sys.M_lumped = std::make_shared<std::vector<double>>(lump(*sys.M));
  sys.lambda_b = 0.0;
  for (auto& r : sys.rhs) r.assign(mesh.n_vertices(), 1.0);
  EXPECT_THROW(dense_oracle_solve(sys), SingularSystem);
}

TEST(Verify, DenseOracleStepSizeLimit) {
  const SurfaceMesh mesh = cube_sphere(7);
  const StepOperators ops = assemble_operators(mesh);
  const SimState s = initial_state(mesh, ops, ParamSet{});
  EXPECT_THROW(dense_oracle_step(s, mesh, ops, make_model(ForceMode::sharp, ParamSet{})), std::invalid_argument);
}
